//! Runs the full cross-check battery in process and prints the gate matrix.
//!
//! Same checks as `logosc verify`; use this form when embedding the library.
//!
//! Run: cargo run --example verify_all

use logosc::config::RunConfig;
use logosc::verify;

fn main() -> logosc::Result<()> {
    let config = RunConfig::default();
    let report = verify::run(&config)?;
    for gate in &report.gates {
        println!(
            "{} {:<42} measured {:>12.4e}  threshold {:>9.1e}",
            if gate.passed { "PASS" } else { "FAIL" },
            gate.name,
            gate.measured,
            gate.threshold
        );
    }
    println!(
        "\n{} gates, {} in {:.2}s",
        report.gates.len(),
        if report.passed { "all passed" } else { "FAILURES PRESENT" },
        report.elapsed_seconds
    );
    std::process::exit(if report.passed { 0 } else { 1 });
}
