//! Writes |psi_n(q, t)|^2 slices for the growing-amplitude family at a few
//! times, and checks each slice integrates to one.
//!
//! Run: cargo run --example wavefunction_slice

use logosc::oscillator::{Family, OscillatorSpec};
use logosc::report::write_csv;
use logosc::{pinney, quantum};

fn main() -> logosc::Result<()> {
    let spec = OscillatorSpec::new(Family::CaseB, 1.0, 100.0, 1.0)?;
    let sol = pinney::analytic_rho(&spec)?;
    let out = std::path::Path::new("out/examples");

    for n in [0usize, 1, 4] {
        for t in [1.0, 10.0] {
            let rho = sol.rho(t)?;
            let half = quantum::sigma_window(n) * rho;
            let rows: Vec<Vec<f64>> = (0..601)
                .map(|i| {
                    let q = -half + 2.0 * half * i as f64 / 600.0;
                    let s = quantum::psi_n(&sol, n, q, t).unwrap();
                    vec![q, s.value.re, s.value.im, s.value.norm_sqr()]
                })
                .collect();
            let path = out.join(format!("psi_n{n}_t{t}.csv"));
            write_csv(&path, "q,re_psi,im_psi,abs2_psi", &rows)?;

            let norm = quantum::normalization(&sol, n, t)?;
            let phase = quantum::lewis_phase(&sol, n, t)?;
            println!(
                "n = {n}  t = {t:5}  norm = {norm:.10}  phase = {phase:+9.4}  width rho = {rho:.4}  -> {}",
                path.display()
            );
        }
    }

    // The packet widens as sqrt(t): |psi_0(0, t)|^2 drops accordingly.
    let d0 = quantum::psi_n(&sol, 0, 0.0, 1.0)?.value.norm_sqr();
    let d1 = quantum::psi_n(&sol, 0, 0.0, 100.0)?.value.norm_sqr();
    println!("peak density ratio |psi(0,1)|^2 / |psi(0,100)|^2 = {:.3} (expect 10)", d0 / d1);
    Ok(())
}
