//! Property tests for the algebraic invariants that should hold at any
//! parameter point, not just the standard plot values.

use proptest::prelude::*;

use logosc::classical;
use logosc::observables::{self, StateKind};
use logosc::oscillator::{Family, OscillatorSpec};
use logosc::pinney;
use logosc::quantum::{self, CoherentStateParams};

fn families() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::CaseA),
        Just(Family::CaseB),
        Just(Family::CaseC),
        Just(Family::ConstantBaseline),
    ]
}

/// Scales that keep the square-root families on their oscillatory branch
/// (omega0 * t0 > 1/2) with comfortable margin.
fn scales() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.2f64..5.0, 2.0f64..50.0, 0.2f64..3.0).prop_map(|(m0, w0, t0)| {
        let k0 = w0 * w0 * m0;
        (m0, k0, t0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn omega_squared_times_mass_is_stiffness(
        family in families(),
        (m0, k0, t0) in scales(),
        x in -2.0f64..3.0,
    ) {
        let spec = OscillatorSpec::new(family, m0, k0, t0).unwrap();
        let t = t0 * 10.0f64.powf(x);
        let lhs = spec.omega(t).unwrap().powi(2) * spec.mass(t).unwrap();
        let rhs = spec.stiffness(t).unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-10);
    }

    #[test]
    fn damping_rate_is_the_log_derivative_of_the_mass(
        family in families(),
        (m0, k0, t0) in scales(),
        x in 0.0f64..2.0,
    ) {
        let spec = OscillatorSpec::new(family, m0, k0, t0).unwrap();
        let t = t0 * 10.0f64.powf(x);
        let h = (1e-6 * t).max(1e-9);
        let numeric = (spec.mass(t + h).unwrap().ln() - spec.mass(t - h).unwrap().ln()) / (2.0 * h);
        let closed = spec.gamma(t).unwrap();
        prop_assert!((numeric - closed).abs() <= 1e-6 * closed.abs().max(1.0));
    }

    #[test]
    fn hermite_parity(n in 0usize..=20, x in -4.0f64..4.0) {
        let plus = quantum::hermite(n, x).unwrap();
        let minus = quantum::hermite(n, -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((minus - sign * plus).abs() <= 1e-10 * plus.abs().max(1.0));
    }

    #[test]
    fn rho_is_positive_and_scales_as_the_square_root_laws(
        (m0, k0, t0) in scales(),
        x in 0.0f64..2.0,
    ) {
        let t = t0 * 10.0f64.powf(x);
        let b = pinney::analytic_rho(&OscillatorSpec::new(Family::CaseB, m0, k0, t0).unwrap()).unwrap();
        let c = pinney::analytic_rho(&OscillatorSpec::new(Family::CaseC, m0, k0, t0).unwrap()).unwrap();
        prop_assert!(b.rho(t).unwrap() > 0.0 && c.rho(t).unwrap() > 0.0);
        let ratio_b = b.rho(t).unwrap() / (t / t0).sqrt() / b.rho(t0).unwrap();
        let ratio_c = c.rho(t).unwrap() * (t / t0).sqrt() / c.rho(t0).unwrap();
        prop_assert!((ratio_b - 1.0).abs() < 1e-12);
        prop_assert!((ratio_c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_rho_solves_its_equation_everywhere(
        family in prop_oneof![Just(Family::CaseA), Just(Family::CaseB), Just(Family::CaseC)],
        (m0, k0, t0) in scales(),
        x in -1.0f64..3.0,
    ) {
        let spec = OscillatorSpec::new(family, m0, k0, t0).unwrap();
        let sol = pinney::analytic_rho(&spec).unwrap();
        let t = t0 * 10.0f64.powf(x);
        let res = pinney::residual(&sol, t).unwrap();
        let scale = spec.omega(t).unwrap().powi(2) * sol.rho(t).unwrap();
        prop_assert!((res / scale).abs() < 1e-9);
    }

    #[test]
    fn alpha_modulus_is_conserved(
        u in -3.0f64..3.0,
        v in -3.0f64..3.0,
        x in 0.0f64..2.0,
        family in prop_oneof![Just(Family::CaseA), Just(Family::CaseB), Just(Family::CaseC)],
    ) {
        let sol = pinney::analytic_rho(&OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap()).unwrap();
        let params = CoherentStateParams::new(u, v);
        let t = 10.0f64.powf(x);
        let alpha = quantum::alpha_t(&params, &sol, t).unwrap();
        prop_assert!((alpha.norm() - params.alpha0().norm()).abs() < 1e-12);
    }

    #[test]
    fn wavefunction_sample_reassembles_and_decays(
        family in prop_oneof![Just(Family::CaseA), Just(Family::CaseB), Just(Family::CaseC)],
        n in 0usize..=8,
        q in -3.0f64..3.0,
        x in 0.0f64..2.0,
    ) {
        let sol = pinney::analytic_rho(&OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap()).unwrap();
        let t = 10.0f64.powf(x);
        let s = quantum::psi_n(&sol, n, q, t).unwrap();
        prop_assert!(s.gaussian_exponent.re <= 0.0);
        let rebuilt = num_complex::Complex64::from_polar(s.norm_prefactor, s.lewis_phase)
            * s.gaussian_exponent.exp()
            * s.hermite_factor;
        prop_assert!((rebuilt - s.value).norm() <= 1e-12 * s.value.norm().max(1e-30));
    }

    #[test]
    fn uncertainty_identity_and_product_floor(
        family in prop_oneof![Just(Family::CaseA), Just(Family::CaseB), Just(Family::CaseC)],
        n in 0usize..=10,
        x in 0.0f64..2.0,
        u in -2.0f64..2.0,
        v in -2.0f64..2.0,
    ) {
        let sol = pinney::analytic_rho(&OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap()).unwrap();
        let t = 10.0f64.powf(x);
        let fock = observables::report(&sol, StateKind::Fock { n }, t).unwrap();
        prop_assert!(fock.identity_residual.abs() < 1e-12);
        prop_assert!(fock.product >= 0.5 * (1.0 - 1e-12));
        let coh = observables::report(&sol, StateKind::Coherent { u, v }, t).unwrap();
        prop_assert!(coh.identity_residual.abs() < 1e-12);
        prop_assert!(coh.product >= 0.5 * (1.0 - 1e-12));
    }

    #[test]
    fn squeezed_families_share_their_uncertainty_data(
        (m0, k0, t0) in scales(),
        n in 0usize..=6,
    ) {
        let b = pinney::analytic_rho(&OscillatorSpec::new(Family::CaseB, m0, k0, t0).unwrap()).unwrap();
        let c = pinney::analytic_rho(&OscillatorSpec::new(Family::CaseC, m0, k0, t0).unwrap()).unwrap();
        let ub = observables::fock_uncertainty(&b, n, 2.0 * t0).unwrap();
        let uc = observables::fock_uncertainty(&c, n, 2.0 * t0).unwrap();
        prop_assert!(((ub.product - uc.product) / ub.product).abs() < 1e-12);
        // Equal magnitude; the sign tracks whether rho grows or decays.
        prop_assert!(((ub.c11.abs() - uc.c11.abs()) / ub.c11.abs()).abs() < 1e-12);
        prop_assert!(ub.c11 > 0.0 && uc.c11 < 0.0);
    }

    #[test]
    fn energy_is_positive_definite(
        family in families(),
        q in -2.0f64..2.0,
        p in -20.0f64..20.0,
        x in 0.0f64..2.0,
    ) {
        let spec = OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap();
        let t = 10.0f64.powf(x);
        let e = classical::energy(&spec, q, p, t).unwrap();
        prop_assert!(e >= 0.0);
        if q.abs() > 1e-6 || p.abs() > 1e-6 {
            prop_assert!(e > 0.0);
        }
    }

    #[test]
    fn log_periodic_orbit_never_leaves_the_unit_circle(x in 0.0f64..4.0) {
        let spec = OscillatorSpec::new(Family::CaseA, 1.0, 100.0, 1.0).unwrap();
        let t = 10.0f64.powf(x);
        let (q, p) = classical::closed_form_point(&spec, t).unwrap();
        prop_assert!((q * q + (p / 10.0).powi(2) - 1.0).abs() < 1e-11);
    }
}
