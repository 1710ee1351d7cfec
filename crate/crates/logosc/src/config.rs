//! Run configuration: a flat key=value file plus CLI overrides.
//!
//! One config drives every subcommand. Precedence is built-in defaults,
//! then the file named by `--config`, then explicit flags.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::oscillator::{Family, OscillatorSpec};

/// How a time grid distributes its points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    /// Equal steps in ln t; equidistributes the oscillation phase.
    Log,
    Linear,
}

impl std::str::FromStr for Spacing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "log" => Ok(Spacing::Log),
            "linear" => Ok(Spacing::Linear),
            other => Err(Error::Config(format!(
                "unknown spacing `{other}` (expected log or linear)"
            ))),
        }
    }
}

/// Descriptor of the evaluation-time grid.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Log => crate::classical::log_grid(self.start, self.end, self.count),
            Spacing::Linear => crate::classical::linear_grid(self.start, self.end, self.count),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.start > 0.0 && self.end > self.start) {
            return Err(Error::Config(format!(
                "t grid must satisfy 0 < start < end, got [{}, {}]",
                self.start, self.end
            )));
        }
        if self.count < 2 {
            return Err(Error::Config(format!(
                "t grid needs at least 2 points, got {}",
                self.count
            )));
        }
        Ok(())
    }
}

/// Gate thresholds and solver tolerances, all overridable.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Tolerances {
    /// Local error of the adaptive integrator.
    pub ode: f64,
    /// Normalized closed-form defect in the auxiliary equation.
    pub residual: f64,
    /// Numeric-vs-analytic rho sup deviation.
    pub agreement: f64,
    /// |norm - 1| of every state.
    pub norm: f64,
    /// Pairwise overlap magnitude.
    pub ortho: f64,
    /// Normalized finite-difference Schrodinger defect.
    pub schrodinger: f64,
    /// Closed-form vs quadrature-oracle observables, relative.
    pub moments: f64,
    /// Uncertainty-correlation identity residual.
    pub identity: f64,
    /// Quantum coherent means vs classical closed forms.
    pub coherent: f64,
    /// Trajectory numeric-vs-closed sup deviation.
    pub trajectory: f64,
    /// Phase-orbit circularity defect (constant-envelope family).
    pub orbit: f64,
    /// Allowed deviation of the fitted envelope exponent from +-1/2.
    pub envelope: f64,
    /// Zero-crossing placement in ln t.
    pub crossing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ode: 1e-9,
            residual: 1e-9,
            agreement: 1e-6,
            norm: 1e-8,
            ortho: 1e-8,
            schrodinger: 1e-5,
            moments: 1e-7,
            identity: 1e-9,
            coherent: 1e-9,
            trajectory: 1e-6,
            orbit: 1e-6,
            envelope: 0.02,
            crossing: 1e-8,
        }
    }
}

/// Everything a subcommand needs to run reproducibly.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RunConfig {
    pub family: Family,
    pub m0: f64,
    pub k0: f64,
    pub t0: f64,
    pub hbar: f64,
    /// State indices for wavefunction and observable commands.
    pub n_list: Vec<usize>,
    pub t_grid: GridSpec,
    /// Points across the symmetric q window.
    pub q_count: usize,
    /// Optional half-width of the q window in units of sqrt(hbar)*rho(t);
    /// the per-state turning-point window is used when absent.
    pub q_width: Option<f64>,
    /// Classical / coherent initial conditions.
    pub q0: f64,
    pub v0: f64,
    pub out_dir: PathBuf,
    pub tol: Tolerances,
}

impl Default for RunConfig {
    /// The parameters every figure in this problem family is drawn at:
    /// m0 = 1, omega0 = 10 (k0 = 100), t0 = 1, hbar = 1, release from rest.
    fn default() -> Self {
        RunConfig {
            family: Family::CaseA,
            m0: 1.0,
            k0: 100.0,
            t0: 1.0,
            hbar: 1.0,
            n_list: vec![0, 1, 2],
            t_grid: GridSpec {
                start: 1.0,
                end: 100.0,
                count: 200,
                spacing: Spacing::Log,
            },
            q_count: 401,
            q_width: None,
            q0: 1.0,
            v0: 0.0,
            out_dir: PathBuf::from("out"),
            tol: Tolerances::default(),
        }
    }
}

impl RunConfig {
    /// Reads `key = value` lines; `#` starts a comment. Unknown keys are
    /// rejected so typos surface instead of silently using defaults.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "{}:{}: expected key = value, got `{line}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.apply_kv(key.trim(), value.trim()).map_err(|e| {
                Error::Config(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        }
        Ok(())
    }

    /// Applies one setting by key.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        fn num(key: &str, value: &str) -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: not a number: `{value}`")))
        }
        match key {
            "family" => self.family = value.parse()?,
            "m0" => self.m0 = num(key, value)?,
            "k0" => self.k0 = num(key, value)?,
            "t0" => self.t0 = num(key, value)?,
            "hbar" => self.hbar = num(key, value)?,
            "n" => {
                self.n_list = value
                    .split(',')
                    .map(|s| {
                        s.trim().parse::<usize>().map_err(|_| {
                            Error::Config(format!("n: not an index: `{}`", s.trim()))
                        })
                    })
                    .collect::<Result<_>>()?;
            }
            "t_start" => self.t_grid.start = num(key, value)?,
            "t_end" => self.t_grid.end = num(key, value)?,
            "t_count" => {
                self.t_grid.count = value
                    .parse()
                    .map_err(|_| Error::Config(format!("t_count: not a count: `{value}`")))?;
            }
            "spacing" => self.t_grid.spacing = value.parse()?,
            "q_count" => {
                self.q_count = value
                    .parse()
                    .map_err(|_| Error::Config(format!("q_count: not a count: `{value}`")))?;
            }
            "q_width" => self.q_width = Some(num(key, value)?),
            "q0" => self.q0 = num(key, value)?,
            "v0" => self.v0 = num(key, value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "tol_ode" => self.tol.ode = num(key, value)?,
            "tol_residual" => self.tol.residual = num(key, value)?,
            "tol_agreement" => self.tol.agreement = num(key, value)?,
            "tol_norm" => self.tol.norm = num(key, value)?,
            "tol_ortho" => self.tol.ortho = num(key, value)?,
            "tol_schrodinger" => self.tol.schrodinger = num(key, value)?,
            "tol_moments" => self.tol.moments = num(key, value)?,
            "tol_identity" => self.tol.identity = num(key, value)?,
            "tol_coherent" => self.tol.coherent = num(key, value)?,
            "tol_trajectory" => self.tol.trajectory = num(key, value)?,
            "tol_orbit" => self.tol.orbit = num(key, value)?,
            "tol_envelope" => self.tol.envelope = num(key, value)?,
            "tol_crossing" => self.tol.crossing = num(key, value)?,
            other => {
                return Err(Error::Config(format!("unknown key `{other}`")));
            }
        }
        Ok(())
    }

    /// Builds the oscillator; `user-defined` is a library-only family and is
    /// rejected here because callbacks cannot live in a config file.
    pub fn spec(&self) -> Result<OscillatorSpec> {
        if self.family == Family::UserDefined {
            return Err(Error::Config(
                "family user-defined requires coefficient callbacks; construct it in code".into(),
            ));
        }
        OscillatorSpec::with_hbar(self.family, self.m0, self.k0, self.t0, self.hbar)
    }

    pub fn validate(&self) -> Result<()> {
        self.spec()?;
        self.t_grid.validate()?;
        if self.q_count < 2 {
            return Err(Error::Config(format!(
                "q_count needs at least 2 points, got {}",
                self.q_count
            )));
        }
        if !(1e-12..=1e-3).contains(&self.tol.ode) {
            return Err(Error::Config(format!(
                "tol_ode must lie in [1e-12, 1e-3], got {}",
                self.tol.ode
            )));
        }
        if let Some(w) = self.q_width {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Config(format!("q_width must be positive, got {w}")));
            }
        }
        for &n in &self.n_list {
            if n > crate::quantum::MAX_ORDER {
                return Err(Error::Config(format!(
                    "n = {n} exceeds the supported maximum {}",
                    crate::quantum::MAX_ORDER
                )));
            }
        }
        Ok(())
    }
}
