//! Tabulates the auxiliary length scale rho(t) for the three log-periodic
//! families: the closed form, its equation defect, and a numeric solution
//! seeded from the same initial data.
//!
//! Run: cargo run --example rho_profiles

use logosc::classical::log_grid;
use logosc::oscillator::{Family, OscillatorSpec};
use logosc::pinney;
use logosc::report::write_csv;

fn main() -> logosc::Result<()> {
    let out = std::path::Path::new("out/examples");
    for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
        let spec = OscillatorSpec::new(family, 1.0, 100.0, 1.0)?;
        let closed = pinney::analytic_rho(&spec)?;
        let (r0, rd0) = closed.rho_pair(1.0)?;
        let numeric = pinney::solve_numeric(&spec, r0, rd0, 1.0, 100.0, 1e-9)?;

        let mut rows = Vec::new();
        let mut worst = 0.0f64;
        for t in log_grid(1.0, 100.0, 200) {
            let (r, rd) = closed.rho_pair(t)?;
            rows.push(vec![t, r, rd, pinney::residual(&closed, t)?]);
            let dev = ((numeric.rho(t)? - r) / r).abs();
            worst = worst.max(dev);
        }
        let path = out.join(format!("rho_{}.csv", family.label()));
        write_csv(&path, "t,rho,rho_dot,residual", &rows)?;
        println!(
            "{:8}  rho(1) = {:.6}  rho(100) = {:.6}  numeric dev {:.2e}  -> {}",
            family.label(),
            closed.rho(1.0)?,
            closed.rho(100.0)?,
            worst,
            path.display()
        );
    }
    Ok(())
}
