//! A user-defined oscillator through the numeric pipeline: coefficient
//! callbacks, finite-difference damping rate, integrated rho(t), and the
//! accumulated phase by quadrature.
//!
//! The coefficients here interpolate between the shipped families
//! (m ~ t^1.5, k ~ t^-0.5, still omega = w0 t0 / t), so no closed form
//! applies but the machinery carries through.
//!
//! Run: cargo run --example custom_oscillator

use std::sync::Arc;

use logosc::classical::log_grid;
use logosc::oscillator::OscillatorSpec;
use logosc::{pinney, quantum};

fn main() -> logosc::Result<()> {
    let spec = OscillatorSpec::user_defined(
        Arc::new(|t: f64| t.powf(1.5)),
        Arc::new(|t: f64| 100.0 * t.powf(-0.5)),
        1.0,
        1.0,
    )?;
    println!(
        "m(t0) = {}, k(t0) = {}, omega0 = {}, gamma(2) = {:.6} (expect 1.5/t = 0.75)",
        spec.m0(),
        spec.k0(),
        spec.omega0(),
        spec.gamma(2.0)?
    );

    // No closed form: integrate from a plausible initial scale.
    let rho0 = 1.0 / (spec.m0() * spec.omega0()).sqrt();
    let sol = pinney::solve_numeric(&spec, rho0, 0.0, 1.0, 50.0, 1e-10)?;
    for t in [1.0, 5.0, 25.0, 50.0] {
        println!(
            "t = {t:5}  rho = {:.6}  rho' = {:+.6}  equation defect = {:+.1e}",
            sol.rho(t)?,
            sol.rho_dot(t)?,
            pinney::residual(&sol, t)?
        );
    }

    // Everything downstream only needs (rho, rho'): states stay normalized
    // and the phase comes from the quadrature route.
    for t in log_grid(1.0, 50.0, 5) {
        let norm = quantum::normalization(&sol, 2, t)?;
        let phase = quantum::lewis_phase_by_quadrature(&sol, 2, t)?;
        println!("t = {t:8.3}  norm(psi_2) = {norm:.9}  phase = {phase:+9.4}");
    }
    Ok(())
}
