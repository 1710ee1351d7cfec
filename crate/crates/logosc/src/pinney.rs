//! Solutions rho(t) of the auxiliary nonlinear equation
//! rho'' + gamma(t) rho' + omega^2(t) rho = 1/(m^2(t) rho^3).
//!
//! The shipped families admit closed forms; everything else goes through the
//! adaptive integrator. A solution is immutable after construction and owns
//! a copy of its oscillator, so evaluation is pure and freely shareable.

use crate::error::{Error, Result};
use crate::ode;
use crate::oscillator::{Family, OscillatorSpec};

/// How a solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PinneyKind {
    ClosedForm,
    Numeric,
}

/// A positive length-scale trajectory rho(t) with its derivative.
#[derive(Debug, Clone)]
pub struct PinneySolution {
    spec: OscillatorSpec,
    kind: PinneyKind,
    dense: Option<ode::DenseSolution>,
}

impl PinneySolution {
    pub fn kind(&self) -> PinneyKind {
        self.kind
    }

    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    /// Validity window; closed forms hold on all t > 0.
    pub fn domain(&self) -> (f64, f64) {
        match &self.dense {
            Some(d) => d.span(),
            None => (f64::MIN_POSITIVE, f64::INFINITY),
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let (start, end) = self.domain();
        t.is_finite() && t >= start && t <= end
    }

    pub fn rho(&self, t: f64) -> Result<f64> {
        Ok(self.rho_pair(t)?.0)
    }

    pub fn rho_dot(&self, t: f64) -> Result<f64> {
        Ok(self.rho_pair(t)?.1)
    }

    /// (rho, rho') in one evaluation.
    pub fn rho_pair(&self, t: f64) -> Result<(f64, f64)> {
        match &self.dense {
            Some(d) => {
                let [r, rd] = d.eval(t)?;
                Ok((r, rd))
            }
            None => {
                if !(t.is_finite() && t > 0.0) {
                    return Err(Error::NonPositiveTime { t });
                }
                let spec = &self.spec;
                match spec.family() {
                    Family::CaseA | Family::ConstantBaseline => {
                        Ok((1.0 / (spec.m0() * spec.omega0()).sqrt(), 0.0))
                    }
                    Family::CaseB => {
                        let d = spec.discriminant();
                        let r = (2.0 / spec.m0()).sqrt() * t.sqrt() / d.powf(0.25);
                        Ok((r, r / (2.0 * t)))
                    }
                    Family::CaseC => {
                        let d = spec.discriminant();
                        let r = (2.0 / spec.m0()).sqrt() * spec.t0() / (d.powf(0.25) * t.sqrt());
                        Ok((r, -r / (2.0 * t)))
                    }
                    Family::UserDefined => unreachable!("no closed form is ever built for callbacks"),
                }
            }
        }
    }

    /// Second derivative: exact for closed forms, the equation's right-hand
    /// side for numeric solutions (interpolants are never differentiated).
    pub fn rho_ddot(&self, t: f64) -> Result<f64> {
        match self.kind {
            PinneyKind::ClosedForm => {
                let (r, _) = self.rho_pair(t)?;
                Ok(match self.spec.family() {
                    Family::CaseA | Family::ConstantBaseline => 0.0,
                    Family::CaseB => -r / (4.0 * t * t),
                    Family::CaseC => 0.75 * r / (t * t),
                    Family::UserDefined => unreachable!(),
                })
            }
            PinneyKind::Numeric => {
                let (r, rd) = self.rho_pair(t)?;
                Ok(rhs(&self.spec, t, r, rd)?)
            }
        }
    }
}

/// rho'' as dictated by the equation itself.
fn rhs(spec: &OscillatorSpec, t: f64, rho: f64, rho_dot: f64) -> Result<f64> {
    let m = spec.mass(t)?;
    let gamma = spec.gamma(t)?;
    let omega = spec.omega(t)?;
    Ok(1.0 / (m * m * rho.powi(3)) - gamma * rho_dot - omega * omega * rho)
}

/// Closed-form solution for the shipped families.
///
/// CaseA and the constant baseline give the stationary rho = 1/sqrt(m0 w0);
/// CaseB grows as sqrt(t) and CaseC decays as 1/sqrt(t), both carrying the
/// (4 w0^2 t0^2 - 1)^(1/4) normalization that requires a positive
/// discriminant.
pub fn analytic_rho(spec: &OscillatorSpec) -> Result<PinneySolution> {
    match spec.family() {
        Family::UserDefined => Err(Error::UnsupportedFamily {
            family: spec.family().label(),
        }),
        Family::CaseB | Family::CaseC => {
            spec.require_positive_discriminant()?;
            Ok(PinneySolution {
                spec: spec.clone(),
                kind: PinneyKind::ClosedForm,
                dense: None,
            })
        }
        Family::CaseA | Family::ConstantBaseline => Ok(PinneySolution {
            spec: spec.clone(),
            kind: PinneyKind::ClosedForm,
            dense: None,
        }),
    }
}

/// Integrates the auxiliary equation from user-supplied initial data.
///
/// The trajectory is stored with continuous output, so the solution can be
/// evaluated anywhere in `[t_start, t_end]`. Fails with `BlowUp` if rho
/// collapses towards zero and with `StepFailure` if the controller stalls.
pub fn solve_numeric(
    spec: &OscillatorSpec,
    rho_init: f64,
    rho_dot_init: f64,
    t_start: f64,
    t_end: f64,
    tol: f64,
) -> Result<PinneySolution> {
    if !(t_start.is_finite() && t_start > 0.0) {
        return Err(Error::NonPositiveTime { t: t_start });
    }
    if !(rho_init.is_finite() && rho_init > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rho_init",
            message: format!("must be positive, got {rho_init}"),
        });
    }
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(Error::InvalidParameter {
            name: "tol",
            message: format!("must lie in [1e-12, 1e-3], got {tol}"),
        });
    }

    let floor = 1e-6 * rho_init;
    let spec_for_rhs = spec.clone();
    let f = move |t: f64, y: &ode::State| -> ode::State {
        let (r, rd) = (y[0], y[1]);
        if r <= 0.0 {
            return [f64::NAN, f64::NAN];
        }
        match rhs(&spec_for_rhs, t, r, rd) {
            Ok(acc) => [rd, acc],
            Err(_) => [f64::NAN, f64::NAN],
        }
    };
    let guard = move |y: &ode::State| y[0] > floor && y[0].is_finite() && y[1].is_finite();
    let dense = ode::integrate(
        f,
        t_start,
        t_end,
        [rho_init, rho_dot_init],
        tol,
        tol * 1e-3,
        Some(&guard),
    )?;
    Ok(PinneySolution {
        spec: spec.clone(),
        kind: PinneyKind::Numeric,
        dense: Some(dense),
    })
}

/// Defect of a solution in the auxiliary equation at time t:
/// rho'' + gamma rho' + omega^2 rho - 1/(m^2 rho^3).
///
/// Closed forms use their exact second derivative, so this measures the
/// quality of the quoted formula; numeric solutions take rho'' from the
/// right-hand side, making the defect vanish by construction.
pub fn residual(solution: &PinneySolution, t: f64) -> Result<f64> {
    if !solution.contains(t) {
        let (start, end) = solution.domain();
        return Err(Error::OutOfDomain { t, start, end });
    }
    let (r, rd) = solution.rho_pair(t)?;
    let rdd = solution.rho_ddot(t)?;
    let spec = solution.spec();
    let m = spec.mass(t)?;
    Ok(rdd + spec.gamma(t)? * rd + spec.omega(t)?.powi(2) * r - 1.0 / (m * m * r.powi(3)))
}
