//! Fluctuations, uncertainty products, and coordinate–momentum correlations
//! in stationary and coherent states, with a brute-force quadrature oracle.
//!
//! Everything reduces to the squeeze parameter g(t) = m(t) rho'(t) rho(t):
//!
//! ```text
//! (Delta q)_n     = rho sqrt(hbar (n + 1/2))
//! (Delta p)_n     = sqrt(hbar (n + 1/2)) sqrt(1 + g^2) / rho
//! (C_{1,1})_n     = g (n + 1/2) hbar
//! (C_{2,2})_n     = -(n^2 + n + 1)(1 - g^2) hbar^2 / 2
//! ```
//!
//! g vanishes for the constant-rho families (true coherent states, minimum
//! product hbar/2) and equals +-1/sqrt(4 w0^2 t0^2 - 1) for the growing and
//! decaying families, which are squeezed. The correlation C_{n,m} is the
//! symmetrized moment (1/2)<q^n p^m + p^m q^n> - <q^n><p^m>.

use crate::error::{Error, Result};
use crate::oscillator::Family;
use crate::pinney::PinneySolution;
use crate::quad;
use crate::quantum::{self, CoherentStateParams};

/// The oracle integrates |psi_n|^2-weighted polynomials; beyond this order
/// the quadrature budget is not validated.
pub const MAX_ORACLE_ORDER: usize = 10;

const QUAD_TOL: f64 = 1e-10;

/// Raw moments of the n-th stationary state at time t, all by quadrature.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RawMoments {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
    /// (1/2)<qp + pq>.
    pub qp_sym: f64,
    /// (1/2)<q^2 p^2 + p^2 q^2>.
    pub q2p2_sym: f64,
}

impl RawMoments {
    pub fn delta_q(&self) -> f64 {
        (self.q2 - self.q1 * self.q1).sqrt()
    }
    pub fn delta_p(&self) -> f64 {
        (self.p2 - self.p1 * self.p1).sqrt()
    }
    pub fn product(&self) -> f64 {
        self.delta_q() * self.delta_p()
    }
    pub fn c11(&self) -> f64 {
        self.qp_sym - self.q1 * self.p1
    }
    pub fn c22(&self) -> f64 {
        self.q2p2_sym - self.q2 * self.p2
    }
}

/// Quadrature moments of psi_n. Momentum enters through analytic
/// q-derivatives of the Gaussian-times-Hermite envelope, never through a
/// transform grid.
pub fn moments_oracle(sol: &PinneySolution, n: usize, t: f64) -> Result<RawMoments> {
    if n > MAX_ORACLE_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_ORACLE_ORDER,
        });
    }
    let hbar = sol.spec().hbar();
    let scale = hbar.sqrt() * sol.rho(t)?;
    let s = quantum::sigma_window(n);

    let moment = |f: &dyn Fn(f64, &quantum::Envelope) -> f64| -> Result<f64> {
        quad::integrate(
            |sigma| {
                let q = sigma * scale;
                match quantum::envelope(sol, n, q, t) {
                    Ok(env) => f(q, &env) * scale,
                    Err(_) => f64::NAN,
                }
            },
            -s,
            s,
            QUAD_TOL,
        )
    };

    Ok(RawMoments {
        q1: moment(&|q, e| q * e.value.norm_sqr())?,
        q2: moment(&|q, e| q * q * e.value.norm_sqr())?,
        p1: moment(&|_, e| hbar * (e.value.conj() * e.d1).im)?,
        p2: moment(&|_, e| hbar * hbar * e.d1.norm_sqr())?,
        qp_sym: moment(&|q, e| hbar * q * (e.value.conj() * e.d1).im)?,
        q2p2_sym: moment(&|q, e| -hbar * hbar * q * q * (e.value.conj() * e.d2).re)?,
    })
}

/// Closed-form uncertainty data of the n-th stationary state.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct FockUncertainty {
    /// Delta q * Delta p.
    pub product: f64,
    pub c11: f64,
    pub c22: f64,
}

fn squeeze_parameter(sol: &PinneySolution, t: f64) -> Result<f64> {
    let (rho, rho_dot) = sol.rho_pair(t)?;
    Ok(sol.spec().mass(t)? * rho_dot * rho)
}

/// Uncertainty product and correlations of psi_n.
///
/// product and c11 come from the g-parameter closed forms; c22 comes from
/// the closed form where rho is stationary and from the quadrature oracle
/// otherwise (which caps n at [`MAX_ORACLE_ORDER`]).
pub fn fock_uncertainty(sol: &PinneySolution, n: usize, t: f64) -> Result<FockUncertainty> {
    let spec = sol.spec();
    if matches!(spec.family(), Family::CaseB | Family::CaseC) {
        spec.require_positive_discriminant()?;
    }
    let hbar = spec.hbar();
    let g = squeeze_parameter(sol, t)?;
    let nu = n as f64 + 0.5;
    let product = nu * hbar * (1.0 + g * g).sqrt();
    let c11 = g * nu * hbar;
    let c22 = if g == 0.0 {
        -((n * n + n + 1) as f64) * hbar * hbar / 2.0
    } else {
        moments_oracle(sol, n, t)?.c22()
    };
    Ok(FockUncertainty { product, c11, c22 })
}

/// (Delta q, Delta p, Delta q * Delta p) in the coherent state; independent
/// of alpha, minimum (hbar/2) exactly when g = 0.
pub fn coherent_fluctuations(sol: &PinneySolution, t: f64) -> Result<(f64, f64, f64)> {
    let hbar = sol.spec().hbar();
    let (rho, _) = sol.rho_pair(t)?;
    let g = squeeze_parameter(sol, t)?;
    let dq = (hbar / 2.0).sqrt() * rho;
    let dp = (hbar / 2.0).sqrt() * (1.0 + g * g).sqrt() / rho;
    Ok((dq, dp, 0.5 * hbar * (1.0 + g * g).sqrt()))
}

/// Which state a report row describes.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum StateKind {
    Fock { n: usize },
    Coherent { u: f64, v: f64 },
}

/// Uncertainty snapshot of one state at one time.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ObservableReport {
    #[serde(flatten)]
    pub state: StateKind,
    pub t: f64,
    pub dq: f64,
    pub dp: f64,
    pub product: f64,
    pub c11: f64,
    pub c22: f64,
    /// product - sqrt((nu hbar)^2 + c11^2) with nu the state's uncertainty
    /// quantum number (n + 1/2 stationary, 1/2 coherent). Zero for every
    /// state here; for nu = 1/2 this is the familiar relation
    /// Delta q Delta p = (hbar/2) sqrt(1 + (2 C11/hbar)^2).
    pub identity_residual: f64,
}

/// Full uncertainty report for a stationary or coherent state.
pub fn report(sol: &PinneySolution, state: StateKind, t: f64) -> Result<ObservableReport> {
    let hbar = sol.spec().hbar();
    match state {
        StateKind::Fock { n } => {
            let (rho, _) = sol.rho_pair(t)?;
            let g = squeeze_parameter(sol, t)?;
            let nu = n as f64 + 0.5;
            let unc = fock_uncertainty(sol, n, t)?;
            let dq = rho * (hbar * nu).sqrt();
            let dp = (hbar * nu).sqrt() * (1.0 + g * g).sqrt() / rho;
            Ok(ObservableReport {
                state,
                t,
                dq,
                dp,
                product: unc.product,
                c11: unc.c11,
                c22: unc.c22,
                identity_residual: unc.product - ((nu * hbar).powi(2) + unc.c11 * unc.c11).sqrt(),
            })
        }
        StateKind::Coherent { u, v } => {
            let params = CoherentStateParams::new(u, v);
            let (dq, dp, product) = coherent_fluctuations(sol, t)?;
            let g = squeeze_parameter(sol, t)?;
            let c11 = g * hbar / 2.0;
            // Raw-moment correlation of the displaced packet: the central
            // part plus the 2 hbar g <q><p> displacement term.
            let (q_mean, p_mean) = quantum::coherent_expectations(&params, sol, t)?;
            let c22 = -(hbar * hbar / 2.0) * (1.0 - g * g) + 2.0 * hbar * g * q_mean * p_mean;
            Ok(ObservableReport {
                state,
                t,
                dq,
                dp,
                product,
                c11,
                c22,
                identity_residual: product - ((0.5 * hbar).powi(2) + c11 * c11).sqrt(),
            })
        }
    }
}
