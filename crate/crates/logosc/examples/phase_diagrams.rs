//! The three classical phase portraits from rest at q0 = 1: a closed circle
//! (constant amplitude), an unwinding spiral (amplitude ~ sqrt(t)), and a
//! collapsing spiral (amplitude ~ 1/sqrt(t)); plus the log-spaced zero
//! crossings of the exactly periodic-in-ln-t family.
//!
//! Run: cargo run --example phase_diagrams

use logosc::classical::{self, log_grid};
use logosc::oscillator::{Family, OscillatorSpec};
use logosc::report::write_csv;

fn main() -> logosc::Result<()> {
    let out = std::path::Path::new("out/examples");

    for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
        let spec = OscillatorSpec::new(family, 1.0, 100.0, 1.0)?;
        let points = classical::phase_diagram(&spec, 1.0, 0.0, 100.0, 2000)?;
        let rows: Vec<Vec<f64>> = points.iter().map(|&(q, p)| vec![q, p]).collect();
        let path = out.join(format!("phase_{}.csv", family.label()));
        write_csv(&path, "q,p", &rows)?;

        let grid = log_grid(1.0, 100.0, 4001);
        let traj = classical::integrate_eom(&spec, 1.0, 0.0, &grid, 1e-10)?;
        let slope = classical::envelope_exponent(&traj.times, &traj.q)?;
        let e0 = classical::energy(&spec, traj.q[0], traj.p[0], grid[0])?;
        let e1 = classical::energy(
            &spec,
            traj.q[grid.len() - 1],
            traj.p[grid.len() - 1],
            grid[grid.len() - 1],
        )?;
        println!(
            "{:8} envelope exponent {slope:+.4}   E(1) = {e0:8.3} -> E(100) = {e1:8.3}   -> {}",
            family.label(),
            path.display()
        );
    }

    let spec = OscillatorSpec::new(Family::CaseA, 1.0, 100.0, 1.0)?;
    let crossings = classical::zero_crossings(&spec, 30.0)?;
    println!("\nzero crossings of q(t) = cos(10 ln t), equally spaced in ln t:");
    for (k, t) in crossings.iter().enumerate().take(8) {
        println!(
            "  k = {k}: t = {t:9.5}, ln t = {:8.5}, (k + 1/2) pi / 10 = {:8.5}",
            t.ln(),
            (k as f64 + 0.5) * std::f64::consts::PI / 10.0
        );
    }
    Ok(())
}
