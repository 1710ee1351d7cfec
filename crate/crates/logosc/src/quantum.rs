//! Exact quantum states of the time-dependent oscillator.
//!
//! Given a positive rho(t), the n-th stationary state of the invariant,
//! carried through time by the accumulated phase theta_n(t), solves the
//! Schrodinger equation exactly:
//!
//! ```text
//! psi_n(q, t) = e^{i theta_n} [pi^(1/2) hbar^(1/2) n! 2^n rho]^(-1/2)
//!               * exp[ (i m / 2 hbar)(rho'/rho + i/(m rho^2)) q^2 ]
//!               * H_n( q / (hbar^(1/2) rho) )
//! theta_n(t)  = -(n + 1/2) * Int_{t0}^{t} dt' / (m(t') rho^2(t'))
//! ```
//!
//! Coherent states are eigenstates of the time-dependent lowering operator;
//! their eigenvalue only rotates, alpha(t) = alpha(t0) e^{2 i theta_0(t)}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::Family;
use crate::pinney::{PinneyKind, PinneySolution};
use crate::quad;

/// Largest Hermite order the double-precision recurrence supports here.
pub const MAX_ORDER: usize = 64;

/// Absolute tolerance for all state-space quadratures, applied after the
/// q -> sigma substitution that makes the integrands O(1).
const QUAD_TOL: f64 = 1e-10;

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
    }
    Ok(hermite_unchecked(n, x))
}

fn hermite_unchecked(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * x;
            for k in 1..n {
                (prev, cur) = (cur, 2.0 * x * cur - 2.0 * k as f64 * prev);
            }
            cur
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderTooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

fn check_after_t0(sol: &PinneySolution, t: f64) -> Result<()> {
    let t0 = sol.spec().t0();
    let (start, end) = sol.domain();
    // The accumulated phase integrates from t0, so the solution must reach
    // back that far and forward to t.
    if start > t0 {
        return Err(Error::OutOfDomain { t: t0, start, end });
    }
    if !(t.is_finite() && t >= t0 && t <= end) {
        return Err(Error::OutOfDomain { t, start: t0, end });
    }
    Ok(())
}

/// Accumulated phase of the n-th state.
///
/// Closed forms when the solution is itself closed-form (the integrand
/// 1/(m rho^2) reduces to w0 t0 / t or sqrt(4 w0^2 t0^2 - 1)/(2t)); adaptive
/// quadrature otherwise.
pub fn lewis_phase(sol: &PinneySolution, n: usize, t: f64) -> Result<f64> {
    check_order(n)?;
    check_after_t0(sol, t)?;
    let spec = sol.spec();
    if sol.kind() == PinneyKind::ClosedForm {
        let rate = match spec.family() {
            Family::CaseA => spec.omega0() * spec.t0(),
            Family::CaseB | Family::CaseC => spec.discriminant().sqrt() / 2.0,
            Family::ConstantBaseline => {
                return Ok(-(n as f64 + 0.5) * spec.omega0() * (t - spec.t0()));
            }
            Family::UserDefined => unreachable!("closed-form solutions never carry callbacks"),
        };
        Ok(-(n as f64 + 0.5) * rate * (t / spec.t0()).ln())
    } else {
        lewis_phase_by_quadrature(sol, n, t)
    }
}

/// Same phase, always through the integral; the independent cross-check for
/// the closed forms above.
pub fn lewis_phase_by_quadrature(sol: &PinneySolution, n: usize, t: f64) -> Result<f64> {
    check_order(n)?;
    check_after_t0(sol, t)?;
    let spec = sol.spec();
    let integral = quad::integrate(
        |tp| {
            let (r, _) = sol.rho_pair(tp).unwrap_or((f64::NAN, f64::NAN));
            match spec.mass(tp) {
                Ok(m) => 1.0 / (m * r * r),
                Err(_) => f64::NAN,
            }
        },
        spec.t0(),
        t,
        QUAD_TOL,
    )?;
    Ok(-(n as f64 + 0.5) * integral)
}

/// A wavefunction value together with its assembly pieces.
#[derive(Debug, Clone, Copy)]
pub struct WaveFunctionSample {
    /// psi_n(q, t), units length^(-1/2).
    pub value: Complex64,
    /// theta_n(t).
    pub lewis_phase: f64,
    /// The full complex exponent multiplying the Gaussian; its real part is
    /// -q^2/(2 hbar rho^2) and never positive.
    pub gaussian_exponent: Complex64,
    /// H_n(q / (hbar^(1/2) rho)).
    pub hermite_factor: f64,
    /// [pi^(1/2) hbar^(1/2) n! 2^n rho]^(-1/2).
    pub norm_prefactor: f64,
}

/// Envelope (everything except e^{i theta_n}) with optional q-derivatives.
pub(crate) struct Envelope {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub norm_prefactor: f64,
    pub gaussian_exponent: Complex64,
    pub hermite_factor: f64,
}

pub(crate) fn envelope(sol: &PinneySolution, n: usize, q: f64, t: f64) -> Result<Envelope> {
    check_order(n)?;
    let spec = sol.spec();
    let hbar = spec.hbar();
    let (rho, rho_dot) = sol.rho_pair(t)?;
    let m = spec.mass(t)?;

    let beta = 1.0 / (hbar.sqrt() * rho);
    let sigma = beta * q;
    let c = Complex64::new(
        -1.0 / (2.0 * hbar * rho * rho),
        m * rho_dot / (2.0 * hbar * rho),
    );
    let pref = (-0.5
        * (0.5 * std::f64::consts::PI.ln()
            + 0.5 * hbar.ln()
            + ln_factorial(n)
            + n as f64 * std::f64::consts::LN_2
            + rho.ln()))
    .exp();

    let h = hermite_unchecked(n, sigma);
    let h1 = if n >= 1 {
        2.0 * n as f64 * hermite_unchecked(n - 1, sigma)
    } else {
        0.0
    };
    let h2 = if n >= 2 {
        4.0 * (n * (n - 1)) as f64 * hermite_unchecked(n - 2, sigma)
    } else {
        0.0
    };

    let gauss = c * q * q;
    let envelope = pref * gauss.exp();
    let value = envelope * h;
    let d1 = envelope * (2.0 * c * q * h + beta * h1);
    let d2 = envelope
        * ((2.0 * c + 4.0 * c * c * q * q) * h + 4.0 * c * q * beta * h1 + beta * beta * h2);

    Ok(Envelope {
        value,
        d1,
        d2,
        norm_prefactor: pref,
        gaussian_exponent: gauss,
        hermite_factor: h,
    })
}

/// The exact n-th Schrodinger solution at (q, t).
pub fn psi_n(sol: &PinneySolution, n: usize, q: f64, t: f64) -> Result<WaveFunctionSample> {
    let theta = lewis_phase(sol, n, t)?;
    let env = envelope(sol, n, q, t)?;
    Ok(WaveFunctionSample {
        value: Complex64::from_polar(1.0, theta) * env.value,
        lewis_phase: theta,
        gaussian_exponent: env.gaussian_exponent,
        hermite_factor: env.hermite_factor,
        norm_prefactor: env.norm_prefactor,
    })
}

/// Half-width of the state's support window in sigma = q/(hbar^(1/2) rho)
/// units: classical turning point of the n-th state plus eight Gaussian
/// widths. All built-in quadratures integrate over this window.
pub fn sigma_window(n: usize) -> f64 {
    (2.0 * n as f64 + 1.0).sqrt() + 8.0
}

/// Int |psi_n|^2 dq by quadrature; equals 1 for a correctly assembled state.
pub fn normalization(sol: &PinneySolution, n: usize, t: f64) -> Result<f64> {
    check_order(n)?;
    check_after_t0(sol, t)?;
    let scale = sol.spec().hbar().sqrt() * sol.rho(t)?;
    let s = sigma_window(n);
    quad::integrate(
        |sigma| {
            let q = sigma * scale;
            match envelope(sol, n, q, t) {
                Ok(env) => env.value.norm_sqr() * scale,
                Err(_) => f64::NAN,
            }
        },
        -s,
        s,
        QUAD_TOL,
    )
}

/// Int conj(psi_n) psi_m dq; vanishes for n != m.
pub fn overlap(sol: &PinneySolution, n: usize, m: usize, t: f64) -> Result<Complex64> {
    check_order(n)?;
    check_order(m)?;
    check_after_t0(sol, t)?;
    let scale = sol.spec().hbar().sqrt() * sol.rho(t)?;
    let s = sigma_window(n.max(m));
    let phase = Complex64::from_polar(1.0, lewis_phase(sol, m, t)? - lewis_phase(sol, n, t)?);
    let part = |imag: bool| {
        quad::integrate(
            |sigma| {
                let q = sigma * scale;
                let a = match envelope(sol, n, q, t) {
                    Ok(e) => e.value,
                    Err(_) => return f64::NAN,
                };
                let b = match envelope(sol, m, q, t) {
                    Ok(e) => e.value,
                    Err(_) => return f64::NAN,
                };
                let prod = a.conj() * b * scale;
                if imag {
                    prod.im
                } else {
                    prod.re
                }
            },
            -s,
            s,
            QUAD_TOL,
        )
    };
    Ok(phase * Complex64::new(part(false)?, part(true)?))
}

/// Defect of psi_n in the Schrodinger equation by central differences:
/// i hbar dpsi/dt + (hbar^2/2m) d^2psi/dq^2 - (1/2) m w^2 q^2 psi.
///
/// An exact solution leaves pure discretization error, so callers normalize
/// by hbar * omega(t) * |psi| and expect something near the stencil accuracy.
pub fn schrodinger_residual(
    sol: &PinneySolution,
    n: usize,
    q: f64,
    t: f64,
    h_t: f64,
    h_q: f64,
) -> Result<Complex64> {
    check_order(n)?;
    check_after_t0(sol, t - h_t)?;
    check_after_t0(sol, t + h_t)?;
    let spec = sol.spec();
    let hbar = spec.hbar();
    let m = spec.mass(t)?;
    let omega = spec.omega(t)?;

    let psi = psi_n(sol, n, q, t)?.value;
    let psi_tp = psi_n(sol, n, q, t + h_t)?.value;
    let psi_tm = psi_n(sol, n, q, t - h_t)?.value;
    let psi_qp = psi_n(sol, n, q + h_q, t)?.value;
    let psi_qm = psi_n(sol, n, q - h_q, t)?.value;

    let dpsi_dt = (psi_tp - psi_tm) / (2.0 * h_t);
    let d2psi_dq2 = (psi_qp - 2.0 * psi + psi_qm) / (h_q * h_q);

    Ok(Complex64::i() * hbar * dpsi_dt + (hbar * hbar / (2.0 * m)) * d2psi_dq2
        - 0.5 * m * omega * omega * q * q * psi)
}

/// Initial eigenvalue alpha(t0) = u + i v of the lowering operator.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CoherentStateParams {
    pub u: f64,
    pub v: f64,
}

impl CoherentStateParams {
    pub fn new(u: f64, v: f64) -> Self {
        CoherentStateParams { u, v }
    }

    /// Calibrates (u, v) so the packet starts at mean position q0 with mean
    /// velocity v0: u = q0/(sqrt(2 hbar) rho0), v = (rho0 p0 - m0' rho0' q0)/sqrt(2 hbar)
    /// with p0 = m(t0) v0.
    pub fn from_initial_conditions(sol: &PinneySolution, q0: f64, v0: f64) -> Result<Self> {
        let spec = sol.spec();
        let t0 = spec.t0();
        let (rho0, rho_dot0) = sol.rho_pair(t0)?;
        let m0 = spec.mass(t0)?;
        let p0 = m0 * v0;
        let root = (2.0 * spec.hbar()).sqrt();
        Ok(CoherentStateParams {
            u: q0 / (root * rho0),
            v: (rho0 * p0 - m0 * rho_dot0 * q0) / root,
        })
    }

    pub fn alpha0(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }
}

/// alpha(t) = alpha(t0) e^{2 i theta_0(t)}: a pure phase rotation, so the
/// modulus is conserved.
pub fn alpha_t(params: &CoherentStateParams, sol: &PinneySolution, t: f64) -> Result<Complex64> {
    let theta0 = lewis_phase(sol, 0, t)?;
    Ok(params.alpha0() * Complex64::from_polar(1.0, 2.0 * theta0))
}

/// Mean position and momentum of the coherent packet.
///
/// With phi = 2 theta_0(t):
///
/// ```text
/// <q> = sqrt(2 hbar) rho [u cos(phi) - v sin(phi)]
/// <p> = sqrt(2 hbar) [(v/rho + u m rho') cos(phi) + (u/rho - v m rho') sin(phi)]
/// ```
pub fn coherent_expectations(
    params: &CoherentStateParams,
    sol: &PinneySolution,
    t: f64,
) -> Result<(f64, f64)> {
    let spec = sol.spec();
    let phi = 2.0 * lewis_phase(sol, 0, t)?;
    let (rho, rho_dot) = sol.rho_pair(t)?;
    let m = spec.mass(t)?;
    let root = (2.0 * spec.hbar()).sqrt();
    let (sin, cos) = phi.sin_cos();
    let (u, v) = (params.u, params.v);
    let q_mean = root * rho * (u * cos - v * sin);
    let p_mean = root * ((v / rho + u * m * rho_dot) * cos + (u / rho - v * m * rho_dot) * sin);
    Ok((q_mean, p_mean))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::OscillatorSpec;
    use crate::pinney;
    use std::f64::consts::{E, PI};

    fn solution(family: Family) -> PinneySolution {
        let spec = OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap();
        pinney::analytic_rho(&spec).unwrap()
    }

    #[test]
    fn hermite_anchors() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0); // 4x^2 - 2
        assert_eq!(hermite(3, 0.5).unwrap(), -5.0); // 8x^3 - 12x
        assert_eq!(hermite(1, 0.0).unwrap(), 0.0);
        assert!(matches!(
            hermite(65, 0.1),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn hermite_matches_explicit_quartic() {
        for &x in &[-2.3f64, -0.7, 0.0, 0.4, 1.9] {
            let explicit = 16.0 * x.powi(4) - 48.0 * x * x + 12.0;
            assert!((hermite(4, x).unwrap() - explicit).abs() < 1e-10 * explicit.abs().max(1.0));
        }
    }

    #[test]
    fn lewis_phase_anchors() {
        let a = solution(Family::CaseA);
        assert_eq!(lewis_phase(&a, 0, 1.0).unwrap(), 0.0);
        assert!((lewis_phase(&a, 0, E).unwrap() + 5.0).abs() < 1e-12);

        let b = solution(Family::CaseB);
        // -(3/2) * sqrt(399)/2
        let expect = -1.5 * 399.0f64.sqrt() / 2.0;
        assert!((lewis_phase(&b, 1, E).unwrap() - expect).abs() < 1e-12);
        assert!((expect + 14.981_238_266_578_632).abs() < 1e-12);
    }

    #[test]
    fn lewis_phase_closed_forms_match_quadrature() {
        for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
            let sol = solution(family);
            for &t in &[1.0, 2.0, 10.0, 100.0] {
                for n in [0, 3] {
                    let closed = lewis_phase(&sol, n, t).unwrap();
                    let integral = lewis_phase_by_quadrature(&sol, n, t).unwrap();
                    assert!(
                        (closed - integral).abs() < 1e-9,
                        "{family:?} n={n} t={t}: {closed} vs {integral}"
                    );
                }
            }
        }
    }

    #[test]
    fn phase_rejects_times_before_reference() {
        let a = solution(Family::CaseA);
        assert!(matches!(
            lewis_phase(&a, 0, 0.5),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn phase_needs_a_solution_reaching_back_to_t0() {
        // Numeric solution starting after t0: the phase integral has no data.
        let spec = OscillatorSpec::new(Family::CaseA, 1.0, 100.0, 1.0).unwrap();
        let sol = crate::pinney::solve_numeric(&spec, 0.5, 0.0, 2.0, 10.0, 1e-9).unwrap();
        assert!(matches!(
            lewis_phase(&sol, 0, 5.0),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn numeric_solution_phases_agree_with_closed_forms() {
        for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
            let closed = solution(family);
            let (r0, rd0) = closed.rho_pair(1.0).unwrap();
            let numeric =
                crate::pinney::solve_numeric(closed.spec(), r0, rd0, 1.0, 50.0, 1e-10).unwrap();
            for &t in &[2.0, 20.0, 50.0] {
                let a = lewis_phase(&closed, 2, t).unwrap();
                let b = lewis_phase(&numeric, 2, t).unwrap();
                assert!((a - b).abs() < 1e-6 * a.abs(), "{family:?} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn states_stay_normalized_through_tenth_order() {
        for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
            let sol = solution(family);
            for n in 0..=10usize {
                for &t in &[1.0, 2.0, 10.0, 100.0] {
                    let norm = normalization(&sol, n, t).unwrap();
                    assert!(
                        (norm - 1.0).abs() < 1e-8,
                        "{family:?} n={n} t={t}: norm {norm}"
                    );
                }
            }
        }
    }

    #[test]
    fn shared_solution_evaluates_from_many_threads() {
        let sol = solution(Family::CaseB);
        std::thread::scope(|scope| {
            for k in 0..4usize {
                let sol = &sol;
                scope.spawn(move || {
                    let t = 1.0 + k as f64;
                    let norm = normalization(sol, k, t).unwrap();
                    assert!((norm - 1.0).abs() < 1e-8);
                });
            }
        });
    }

    #[test]
    fn ground_state_value_at_origin() {
        let a = solution(Family::CaseA);
        let sample = psi_n(&a, 0, 0.0, 1.0).unwrap();
        let expect = (10.0 / PI).powf(0.25); // 1.3357110900762825
        assert!((sample.value.re - expect).abs() < 1e-12);
        assert!(sample.value.im.abs() < 1e-15);
        assert_eq!(sample.lewis_phase, 0.0);
        assert_eq!(sample.hermite_factor, 1.0);
    }

    #[test]
    fn order_cap_applies_to_full_states_too() {
        let a = solution(Family::CaseA);
        assert!(matches!(
            psi_n(&a, 65, 0.0, 2.0),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn first_excited_state_has_a_node_at_the_origin() {
        for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
            let sol = solution(family);
            let sample = psi_n(&sol, 1, 0.0, 3.0).unwrap();
            assert_eq!(sample.value, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn case_b_ground_density_at_origin() {
        let b = solution(Family::CaseB);
        let sample = psi_n(&b, 0, 0.0, 1.0).unwrap();
        let rho = b.rho(1.0).unwrap();
        assert!((sample.value.norm_sqr() - 1.0 / (rho * PI.sqrt())).abs() < 1e-12);
        assert!((sample.value.norm_sqr() - 1.783_007_991_667_806).abs() < 1e-10);
    }

    #[test]
    fn sample_decomposition_reassembles() {
        let c = solution(Family::CaseC);
        let s = psi_n(&c, 4, 0.37, 2.5).unwrap();
        let rebuilt = Complex64::from_polar(s.norm_prefactor, s.lewis_phase)
            * s.gaussian_exponent.exp()
            * s.hermite_factor;
        assert!((rebuilt - s.value).norm() < 1e-14 * s.value.norm().max(1e-300));
        assert!(s.gaussian_exponent.re <= 0.0);
    }

    #[test]
    fn states_are_normalized() {
        let a = solution(Family::CaseA);
        assert!((normalization(&a, 0, 5.0).unwrap() - 1.0).abs() < 1e-8);
        let c = solution(Family::CaseC);
        assert!((normalization(&c, 5, 10.0).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn distinct_states_are_orthogonal() {
        let b = solution(Family::CaseB);
        assert!(overlap(&b, 0, 2, 3.0).unwrap().norm() < 1e-8);
        // ... and the diagonal reproduces the norm.
        assert!((overlap(&b, 2, 2, 3.0).unwrap().re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn schrodinger_defect_is_discretization_sized() {
        let a = solution(Family::CaseA);
        let res = schrodinger_residual(&a, 0, 0.1, 2.0, 1e-5, 1e-4).unwrap();
        let psi = psi_n(&a, 0, 0.1, 2.0).unwrap().value;
        let scale = 1.0 * a.spec().omega(2.0).unwrap() * psi.norm();
        assert!(res.norm() / scale < 1e-5, "normalized {}", res.norm() / scale);

        let b = solution(Family::CaseB);
        let q = b.rho(5.0).unwrap();
        let res = schrodinger_residual(&b, 3, q, 5.0, 1e-5, 1e-4).unwrap();
        let psi = psi_n(&b, 3, q, 5.0).unwrap().value;
        let scale = b.spec().omega(5.0).unwrap() * psi.norm();
        assert!(res.norm() / scale < 1e-5, "normalized {}", res.norm() / scale);

        let c = solution(Family::CaseC);
        let res = schrodinger_residual(&c, 1, 1e-3, 3.0, 1e-5, 1e-4).unwrap();
        let psi = psi_n(&c, 1, 1e-3, 3.0).unwrap().value;
        let scale = c.spec().omega(3.0).unwrap() * psi.norm();
        assert!(res.norm() / scale < 1e-5, "normalized {}", res.norm() / scale);
    }

    #[test]
    fn residual_stencil_must_stay_in_domain() {
        let a = solution(Family::CaseA);
        assert!(matches!(
            schrodinger_residual(&a, 0, 0.1, 1.0, 1e-5, 1e-4),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn alpha_rotation() {
        let a = solution(Family::CaseA);
        let params = CoherentStateParams::new(1.0, 0.0);
        let at_start = alpha_t(&params, &a, 1.0).unwrap();
        assert!((at_start - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        // 2 theta_0 = -w0 t0 ln(t/t0) = -pi at t = e^(pi/10).
        let t = (PI / 10.0).exp();
        let rotated = alpha_t(&params, &a, t).unwrap();
        assert!((rotated - Complex64::new(-1.0, 0.0)).norm() < 1e-12);

        let p2 = CoherentStateParams::new(0.3, -1.2);
        for &t in &[1.0, 1.7, 9.0, 64.0] {
            let alpha = alpha_t(&p2, &a, t).unwrap();
            assert!((alpha.norm() - p2.alpha0().norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn coherent_expectations_match_the_log_periodic_closed_form() {
        let a = solution(Family::CaseA);
        let params = CoherentStateParams::from_initial_conditions(&a, 1.0, 0.0).unwrap();
        let (q0, p0) = coherent_expectations(&params, &a, 1.0).unwrap();
        assert!((q0 - 1.0).abs() < 1e-14 && p0.abs() < 1e-14);

        let t = (PI / 10.0).exp();
        let (q, p) = coherent_expectations(&params, &a, t).unwrap();
        assert!((q + 1.0).abs() < 1e-12 && p.abs() < 1e-11);

        for &t in &[1.3, 4.0, 27.0] {
            let (q, p) = coherent_expectations(&params, &a, t).unwrap();
            let arg = 10.0 * t.ln();
            assert!((q - arg.cos()).abs() < 1e-12);
            assert!((p + 10.0 * arg.sin()).abs() < 1e-11);
        }
    }

    #[test]
    fn coherent_orbit_is_circular_for_constant_rho() {
        let a = solution(Family::CaseA);
        let params = CoherentStateParams::from_initial_conditions(&a, 1.0, 0.0).unwrap();
        for i in 0..50 {
            let t = 1.0 * 100.0f64.powf(i as f64 / 49.0);
            let (q, p) = coherent_expectations(&params, &a, t).unwrap();
            assert!((q * q + (p / 10.0).powi(2) - 1.0).abs() < 1e-12);
        }
    }
}
