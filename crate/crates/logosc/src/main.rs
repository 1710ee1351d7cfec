//! Thin command-line front end: flag parsing and dispatch only.
//!
//! Exit codes: 0 all gates passed, 1 at least one gate failed, 2 the run
//! could not be carried out (bad config, guarded domain, I/O); errors are
//! reported as one JSON object on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use logosc::cli;
use logosc::config::{RunConfig, Spacing};
use logosc::oscillator::Family;

#[derive(Parser)]
#[command(
    name = "logosc",
    version,
    about = "Log-periodic time-dependent oscillators: exact states, observables, and phase diagrams",
    after_help = "Precedence: built-in defaults, then --config file entries, then flags."
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Flat key = value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Oscillator family: case-a, case-b, case-c, constant.
    #[arg(long, global = true)]
    family: Option<Family>,

    /// Reference mass m0 > 0.
    #[arg(long, global = true)]
    m0: Option<f64>,

    /// Reference stiffness k0 > 0.
    #[arg(long, global = true)]
    k0: Option<f64>,

    /// Reference time t0 > 0.
    #[arg(long, global = true)]
    t0: Option<f64>,

    /// Action scale (defaults to 1).
    #[arg(long, global = true)]
    hbar: Option<f64>,

    /// State indices, comma separated (e.g. --n 0,1,2).
    #[arg(long, global = true, value_delimiter = ',')]
    n: Option<Vec<usize>>,

    /// Time grid start.
    #[arg(long, global = true)]
    t_start: Option<f64>,

    /// Time grid end.
    #[arg(long, global = true)]
    t_end: Option<f64>,

    /// Time grid size.
    #[arg(long, global = true)]
    t_count: Option<usize>,

    /// Grid spacing: log or linear.
    #[arg(long, global = true)]
    spacing: Option<Spacing>,

    /// Points across the q window of wavefunction slices.
    #[arg(long, global = true)]
    q_count: Option<usize>,

    /// Half-width of the q window in units of sqrt(hbar)*rho.
    #[arg(long, global = true)]
    q_width: Option<f64>,

    /// Initial mean position.
    #[arg(long, global = true)]
    q0: Option<f64>,

    /// Initial mean velocity.
    #[arg(long, global = true)]
    v0: Option<f64>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Integrator local-error tolerance.
    #[arg(long, global = true)]
    tol_ode: Option<f64>,

    /// Closed-form equation-defect gate.
    #[arg(long, global = true)]
    tol_residual: Option<f64>,

    /// Numeric-vs-analytic rho gate.
    #[arg(long, global = true)]
    tol_agreement: Option<f64>,

    /// Normalization gate.
    #[arg(long, global = true)]
    tol_norm: Option<f64>,

    /// Orthogonality gate.
    #[arg(long, global = true)]
    tol_ortho: Option<f64>,

    /// Schrodinger finite-difference defect gate.
    #[arg(long, global = true)]
    tol_schrodinger: Option<f64>,

    /// Closed-form vs oracle observables gate.
    #[arg(long, global = true)]
    tol_moments: Option<f64>,

    /// Uncertainty-correlation identity gate.
    #[arg(long, global = true)]
    tol_identity: Option<f64>,

    /// Coherent-means vs classical closed-form gate.
    #[arg(long, global = true)]
    tol_coherent: Option<f64>,

    /// Trajectory cross-check gate.
    #[arg(long, global = true)]
    tol_trajectory: Option<f64>,

    /// Phase-orbit circularity gate.
    #[arg(long, global = true)]
    tol_orbit: Option<f64>,

    /// Envelope-exponent gate.
    #[arg(long, global = true)]
    tol_envelope: Option<f64>,

    /// Zero-crossing spacing gate.
    #[arg(long, global = true)]
    tol_crossing: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the auxiliary length scale rho(t) with its equation defect.
    Rho,
    /// Write wavefunction slices psi_n(q, t) with normalization sidecars.
    Wavefunction,
    /// Uncertainty products and correlations per state and time.
    Observables,
    /// Classical trajectory (t, q, p) from the configured initial data.
    Trajectory,
    /// Log-sampled classical (q, p) orbit.
    PhaseDiagram,
    /// Run every cross-check gate and write the pass/fail report.
    Verify,
}

fn build_config(args: &Args) -> logosc::Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &args.config {
        config.apply_file(path)?;
    }
    if let Some(v) = args.family {
        config.family = v;
    }
    if let Some(v) = args.m0 {
        config.m0 = v;
    }
    if let Some(v) = args.k0 {
        config.k0 = v;
    }
    if let Some(v) = args.t0 {
        config.t0 = v;
    }
    if let Some(v) = args.hbar {
        config.hbar = v;
    }
    if let Some(v) = &args.n {
        config.n_list = v.clone();
    }
    if let Some(v) = args.t_start {
        config.t_grid.start = v;
    }
    if let Some(v) = args.t_end {
        config.t_grid.end = v;
    }
    if let Some(v) = args.t_count {
        config.t_grid.count = v;
    }
    if let Some(v) = args.spacing {
        config.t_grid.spacing = v;
    }
    if let Some(v) = args.q_count {
        config.q_count = v;
    }
    if let Some(v) = args.q_width {
        config.q_width = Some(v);
    }
    if let Some(v) = args.q0 {
        config.q0 = v;
    }
    if let Some(v) = args.v0 {
        config.v0 = v;
    }
    if let Some(v) = &args.out {
        config.out_dir = v.clone();
    }
    let t = &mut config.tol;
    for (slot, value) in [
        (&mut t.ode, args.tol_ode),
        (&mut t.residual, args.tol_residual),
        (&mut t.agreement, args.tol_agreement),
        (&mut t.norm, args.tol_norm),
        (&mut t.ortho, args.tol_ortho),
        (&mut t.schrodinger, args.tol_schrodinger),
        (&mut t.moments, args.tol_moments),
        (&mut t.identity, args.tol_identity),
        (&mut t.coherent, args.tol_coherent),
        (&mut t.trajectory, args.tol_trajectory),
        (&mut t.orbit, args.tol_orbit),
        (&mut t.envelope, args.tol_envelope),
        (&mut t.crossing, args.tol_crossing),
    ] {
        if let Some(v) = value {
            *slot = v;
        }
    }
    config.validate()?;
    Ok(config)
}

fn run(args: &Args) -> logosc::Result<cli::CmdOutcome> {
    let config = build_config(args)?;
    match args.command {
        Command::Rho => cli::cmd_rho(&config),
        Command::Wavefunction => cli::cmd_wavefunction(&config),
        Command::Observables => cli::cmd_observables(&config),
        Command::Trajectory => cli::cmd_trajectory(&config),
        Command::PhaseDiagram => cli::cmd_phase_diagram(&config),
        Command::Verify => cli::cmd_verify(&config),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(outcome) => {
            for g in &outcome.gates {
                println!(
                    "{} {:<40} measured {:>12.4e}  threshold {:>9.1e}",
                    if g.passed { "PASS" } else { "FAIL" },
                    g.name,
                    g.measured,
                    g.threshold
                );
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome).expect("outcome serializes")
            );
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({"error": err.kind(), "message": err.to_string()})
            );
            ExitCode::from(2)
        }
    }
}
