//! Classical trajectories q(t), p(t) of the damped equation of motion
//! q'' + gamma(t) q' + omega^2(t) q = 0, their energies, amplitude
//! envelopes, and phase-space orbits.
//!
//! p is the canonical momentum m(t) q' throughout. The shipped closed forms
//! are the release-from-rest solutions (q0 = 1, v0 = 0): an exactly
//! log-periodic cosine for the linear-mass family, and sqrt(t)-enveloped
//! cousins for the other two. Oscillation phase advances like ln t, so all
//! default grids are log-spaced.

use crate::error::{Error, Result};
use crate::ode;
use crate::oscillator::{Family, OscillatorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrajectorySource {
    ClosedForm,
    Numeric,
}

/// Sampled classical trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub source: TrajectorySource,
}

impl Trajectory {
    fn validate(self) -> Result<Self> {
        for w in self.times.windows(2) {
            if !(w[0].is_finite() && w[1].is_finite() && w[1] > w[0]) {
                return Err(Error::InvalidParameter {
                    name: "grid",
                    message: "times must be strictly increasing".into(),
                });
            }
        }
        if self
            .q
            .iter()
            .chain(self.p.iter())
            .any(|x| !x.is_finite())
        {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                message: "non-finite sample".into(),
            });
        }
        Ok(self)
    }
}

/// Log-spaced grid over [start, end].
pub fn log_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && start > 0.0 && end > start);
    let ratio = end / start;
    (0..count)
        .map(|i| start * ratio.powf(i as f64 / (count - 1) as f64))
        .collect()
}

/// Uniformly spaced grid over [start, end].
pub fn linear_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && end > start);
    (0..count)
        .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn check_grid(spec: &OscillatorSpec, grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "grid",
            message: format!("need at least 2 points, got {}", grid.len()),
        });
    }
    for &t in grid {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonPositiveTime { t });
        }
    }
    let _ = spec;
    Ok(())
}

/// Closed-form (q, p) at one time for the release-from-rest trajectory.
pub fn closed_form_point(spec: &OscillatorSpec, t: f64) -> Result<(f64, f64)> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonPositiveTime { t });
    }
    let t0 = spec.t0();
    let m0 = spec.m0();
    let w0 = spec.omega0();
    match spec.family() {
        Family::CaseA => {
            let theta = w0 * t0 * (t / t0).ln();
            Ok((theta.cos(), -m0 * w0 * theta.sin()))
        }
        Family::CaseB => {
            let d = spec.require_positive_discriminant()?.sqrt();
            let phi = 0.5 * d * (t / t0).ln();
            let q = (t / t0).sqrt() * (phi.cos() - phi.sin() / d);
            let p = -(t0 / t).sqrt() * (2.0 * m0 * w0 * w0 * t0 / d) * phi.sin();
            Ok((q, p))
        }
        Family::CaseC => {
            let d = spec.require_positive_discriminant()?.sqrt();
            let phi = 0.5 * d * (t / t0).ln();
            let q = (t0 / t).sqrt() * (phi.cos() + phi.sin() / d);
            let p = -(t / t0).sqrt() * (2.0 * m0 * w0 * w0 * t0 / d) * phi.sin();
            Ok((q, p))
        }
        other => Err(Error::UnsupportedFamily {
            family: other.label(),
        }),
    }
}

/// Closed-form trajectory on a grid. Only the printed initial conditions
/// (q0 = 1, v0 = 0) are shipped; anything else goes through `integrate_eom`.
pub fn closed_form_trajectory(
    spec: &OscillatorSpec,
    q0: f64,
    v0: f64,
    grid: &[f64],
) -> Result<Trajectory> {
    if q0 != 1.0 || v0 != 0.0 {
        return Err(Error::UnsupportedInitialConditions { q0, v0 });
    }
    check_grid(spec, grid)?;
    let mut q = Vec::with_capacity(grid.len());
    let mut p = Vec::with_capacity(grid.len());
    for &t in grid {
        let (qi, pi) = closed_form_point(spec, t)?;
        q.push(qi);
        p.push(pi);
    }
    Trajectory {
        times: grid.to_vec(),
        q,
        p,
        source: TrajectorySource::ClosedForm,
    }
    .validate()
}

/// Adaptive integration of the equation of motion from arbitrary initial
/// data; p is reported as m(t) q'.
pub fn integrate_eom(
    spec: &OscillatorSpec,
    q0: f64,
    v0: f64,
    grid: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    check_grid(spec, grid)?;
    let spec_rhs = spec.clone();
    let f = move |t: f64, y: &ode::State| -> ode::State {
        match (spec_rhs.gamma(t), spec_rhs.omega(t)) {
            (Ok(g), Ok(w)) => [y[1], -g * y[1] - w * w * y[0]],
            _ => [f64::NAN, f64::NAN],
        }
    };
    let dense = ode::integrate(
        f,
        grid[0],
        *grid.last().unwrap(),
        [q0, v0],
        tol,
        tol * 1e-3,
        None,
    )?;
    let mut q = Vec::with_capacity(grid.len());
    let mut p = Vec::with_capacity(grid.len());
    for &t in grid {
        let [qi, vi] = dense.eval(t)?;
        q.push(qi);
        p.push(spec.mass(t)? * vi);
    }
    Trajectory {
        times: grid.to_vec(),
        q,
        p,
        source: TrajectorySource::Numeric,
    }
    .validate()
}

/// Instantaneous energy p^2/(2 m(t)) + k(t) q^2 / 2.
pub fn energy(spec: &OscillatorSpec, q: f64, p: f64, t: f64) -> Result<f64> {
    Ok(p * p / (2.0 * spec.mass(t)?) + 0.5 * spec.stiffness(t)? * q * q)
}

/// Log-sampled (q, p) orbit over [t0, t_end], one row per sample.
pub fn phase_diagram(
    spec: &OscillatorSpec,
    q0: f64,
    v0: f64,
    t_end: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            message: format!("need at least 2, got {samples}"),
        });
    }
    let grid = log_grid(spec.t0(), t_end, samples);
    let traj = integrate_eom(spec, q0, v0, &grid, 1e-10)?;
    Ok(traj.q.iter().copied().zip(traj.p.iter().copied()).collect())
}

/// Power-law exponent of the oscillation envelope: finds the local maxima
/// of |values|, sharpens each peak with a parabola in (ln t, ln |value|),
/// and returns the least-squares slope through the peak points.
pub fn envelope_exponent(times: &[f64], values: &[f64]) -> Result<f64> {
    assert_eq!(times.len(), values.len());
    let a: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 1..a.len().saturating_sub(1) {
        if a[i] > a[i - 1] && a[i] > a[i + 1] && a[i] > 0.0 {
            let x = [times[i - 1].ln(), times[i].ln(), times[i + 1].ln()];
            let y = [a[i - 1].ln(), a[i].ln(), a[i + 1].ln()];
            // Vertex of the interpolating parabola.
            let d21 = (y[1] - y[0]) / (x[1] - x[0]);
            let d32 = (y[2] - y[1]) / (x[2] - x[1]);
            let curv = (d32 - d21) / (x[2] - x[0]);
            if curv < 0.0 {
                let xv = 0.5 * (x[0] + x[1] - d21 / curv);
                let yv = y[1] + curv * (xv - x[0]) * (xv - x[1]) + d21 * (xv - x[1]);
                xs.push(xv);
                ys.push(yv);
            } else {
                xs.push(x[1]);
                ys.push(y[1]);
            }
        }
    }
    if xs.len() < 2 {
        return Err(Error::TooFewPeaks {
            found: xs.len(),
            need: 2,
        });
    }
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - xm) * (y - ym);
        den += (x - xm) * (x - xm);
    }
    Ok(num / den)
}

/// Times in (t0, t_end] where the release-from-rest closed form crosses
/// zero, by log-space bisection. For the linear-mass family these are
/// equally spaced in ln t.
pub fn zero_crossings(spec: &OscillatorSpec, t_end: f64) -> Result<Vec<f64>> {
    let t0 = spec.t0();
    if !(t_end.is_finite() && t_end > t0) {
        return Err(Error::InvalidParameter {
            name: "t_end",
            message: format!("must exceed t0 = {t0}, got {t_end}"),
        });
    }
    // Phase advances at most ~w0 t0 per unit ln t; 16 samples per half-cycle.
    let x_end = (t_end / t0).ln();
    let dx = std::f64::consts::PI / (spec.omega0() * spec.t0()) / 16.0;
    let steps = (x_end / dx).ceil() as usize + 1;
    let q_at = |x: f64| closed_form_point(spec, t0 * x.exp()).map(|(q, _)| q);

    let mut crossings = Vec::new();
    let mut x_prev = 0.0_f64;
    let mut q_prev = q_at(0.0)?;
    for i in 1..=steps {
        let x = (i as f64 * dx).min(x_end);
        let q = q_at(x)?;
        if q_prev == 0.0 {
            crossings.push(t0 * x_prev.exp());
        } else if q_prev * q < 0.0 {
            let (mut lo, mut hi) = (x_prev, x);
            let mut q_lo = q_prev;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let q_mid = q_at(mid)?;
                if q_lo * q_mid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    q_lo = q_mid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            crossings.push(t0 * (0.5 * (lo + hi)).exp());
        }
        x_prev = x;
        q_prev = q;
        if x >= x_end {
            break;
        }
    }
    Ok(crossings)
}
