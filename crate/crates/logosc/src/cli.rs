//! Subcommand implementations behind the thin binary.
//!
//! Every command takes one [`RunConfig`], writes CSV/JSON artifacts into the
//! output directory, and reports whether its gates passed; the binary turns
//! that into the exit status (0 pass, 1 gate failure, 2 error).

use std::path::PathBuf;

use serde_json::json;

use crate::classical;
use crate::config::RunConfig;
use crate::error::Result;
use crate::observables::{self, StateKind};
use crate::oscillator::Family;
use crate::pinney;
use crate::quantum::{self, CoherentStateParams};
use crate::report::{artifact_path, param_hash, write_csv, write_json};
use crate::verify;

/// What a command produced.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CmdOutcome {
    pub command: &'static str,
    pub passed: bool,
    pub files: Vec<PathBuf>,
    pub gates: Vec<verify::Gate>,
    pub summary: serde_json::Value,
}

fn gate(name: impl Into<String>, measured: f64, threshold: f64) -> verify::Gate {
    let name = name.into();
    verify::Gate {
        passed: measured.is_finite() && measured <= threshold,
        name,
        measured,
        threshold,
    }
}

/// Tabulates rho(t): the closed form with its equation defect, and the
/// numeric solution seeded from the closed form at the grid start.
pub fn cmd_rho(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "grid": config.t_grid}));
    let grid = config.t_grid.points();
    let mut files = Vec::new();
    let mut gates = Vec::new();

    let closed = pinney::analytic_rho(&spec)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut worst_res = 0.0f64;
    for &t in &grid {
        let (r, rd) = closed.rho_pair(t)?;
        let res = pinney::residual(&closed, t)?;
        worst_res = worst_res.max((res / (spec.omega(t)?.powi(2) * r)).abs());
        rows.push(vec![t, r, rd, res]);
    }
    let path = artifact_path(&config.out_dir, "rho_analytic", spec.family().label(), &hash, "csv");
    write_csv(&path, "t,rho,rho_dot,residual", &rows)?;
    files.push(path);
    gates.push(gate("rho_closed_form_residual", worst_res, config.tol.residual));

    let (r0, rd0) = closed.rho_pair(grid[0])?;
    let numeric = pinney::solve_numeric(&spec, r0, rd0, grid[0], *grid.last().unwrap(), config.tol.ode)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut worst_dev = 0.0f64;
    let mut min_rho = f64::INFINITY;
    for &t in &grid {
        let (r, rd) = numeric.rho_pair(t)?;
        let res = pinney::residual(&numeric, t)?;
        min_rho = min_rho.min(r);
        worst_dev = worst_dev.max(((r - closed.rho(t)?) / closed.rho(t)?).abs());
        rows.push(vec![t, r, rd, res]);
    }
    let path = artifact_path(&config.out_dir, "rho_numeric", spec.family().label(), &hash, "csv");
    write_csv(&path, "t,rho,rho_dot,residual", &rows)?;
    files.push(path);
    gates.push(gate("rho_numeric_vs_analytic", worst_dev, config.tol.agreement));
    gates.push(gate(
        "rho_positive",
        if min_rho > 0.0 { 0.0 } else { 1.0 },
        0.0,
    ));

    let passed = gates.iter().all(|g| g.passed);
    Ok(CmdOutcome {
        command: "rho",
        passed,
        files,
        gates,
        summary: json!({"spec": spec.provenance(), "points": grid.len()}),
    })
}

/// Writes one wavefunction slice per (n, t) with a JSON sidecar holding the
/// normalization figure and the accumulated phase.
pub fn cmd_wavefunction(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let sol = pinney::analytic_rho(&spec)?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "grid": config.t_grid, "n": config.n_list, "q_count": config.q_count, "q_width": config.q_width}));
    let mut files = Vec::new();
    let mut worst_norm = 0.0f64;

    for &n in &config.n_list {
        for (ti, &t) in config.t_grid.points().iter().enumerate() {
            let rho = sol.rho(t)?;
            let half_width = config
                .q_width
                .unwrap_or_else(|| quantum::sigma_window(n))
                * spec.hbar().sqrt()
                * rho;
            let mut rows = Vec::with_capacity(config.q_count);
            for qi in 0..config.q_count {
                let q = -half_width
                    + 2.0 * half_width * qi as f64 / (config.q_count - 1) as f64;
                let sample = quantum::psi_n(&sol, n, q, t)?;
                rows.push(vec![q, sample.value.re, sample.value.im, sample.value.norm_sqr()]);
            }
            let stem = format!("wavefunction_n{n}_t{ti}");
            let path = artifact_path(&config.out_dir, &stem, spec.family().label(), &hash, "csv");
            write_csv(&path, "q,re_psi,im_psi,abs2_psi", &rows)?;

            let norm = quantum::normalization(&sol, n, t)?;
            worst_norm = worst_norm.max((norm - 1.0).abs());
            let meta = artifact_path(
                &config.out_dir,
                &format!("{stem}_meta"),
                spec.family().label(),
                &hash,
                "json",
            );
            write_json(
                &meta,
                &json!({
                    "spec": spec.provenance(),
                    "n": n,
                    "t": t,
                    "normalization": norm,
                    "lewis_phase": quantum::lewis_phase(&sol, n, t)?,
                }),
            )?;
            files.push(path);
            files.push(meta);
        }
    }

    let gates = vec![gate("normalization", worst_norm, config.tol.norm)];
    let passed = gates.iter().all(|g| g.passed);
    Ok(CmdOutcome {
        command: "wavefunction",
        passed,
        files,
        gates,
        summary: json!({"spec": spec.provenance(), "states": config.n_list}),
    })
}

/// Uncertainty report: one JSON file with every row, plus per-state CSV
/// sweeps over the time grid.
pub fn cmd_observables(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let sol = pinney::analytic_rho(&spec)?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "grid": config.t_grid, "n": config.n_list}));
    let grid = config.t_grid.points();
    let params = CoherentStateParams::from_initial_conditions(&sol, config.q0, config.v0)?;

    let mut states: Vec<StateKind> = config
        .n_list
        .iter()
        .map(|&n| StateKind::Fock { n })
        .collect();
    states.push(StateKind::Coherent {
        u: params.u,
        v: params.v,
    });

    let mut files = Vec::new();
    let mut all_rows = Vec::new();
    let mut worst_identity = 0.0f64;
    for state in &states {
        let mut rows = Vec::with_capacity(grid.len());
        for &t in &grid {
            let row = observables::report(&sol, *state, t)?;
            worst_identity = worst_identity.max(row.identity_residual.abs());
            rows.push(vec![t, row.dq, row.dp, row.product, row.c11, row.c22]);
            all_rows.push(row);
        }
        let stem = match state {
            StateKind::Fock { n } => format!("observables_fock{n}"),
            StateKind::Coherent { .. } => "observables_coherent".to_string(),
        };
        let path = artifact_path(&config.out_dir, &stem, spec.family().label(), &hash, "csv");
        write_csv(&path, "t,dq,dp,product,c11,c22", &rows)?;
        files.push(path);
    }

    let json_path = artifact_path(&config.out_dir, "observables", spec.family().label(), &hash, "json");
    write_json(
        &json_path,
        &json!({
            "spec": spec.provenance(),
            "coherent_params": params,
            "rows": all_rows,
        }),
    )?;
    files.push(json_path);

    let gates = vec![gate("uncertainty_identity", worst_identity, config.tol.identity)];
    let passed = gates.iter().all(|g| g.passed);
    Ok(CmdOutcome {
        command: "observables",
        passed,
        files,
        gates,
        summary: json!({"spec": spec.provenance(), "rows": all_rows.len()}),
    })
}

/// Classical trajectory on the configured grid: numeric always, closed form
/// alongside when the family and initial conditions admit one.
pub fn cmd_trajectory(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "grid": config.t_grid, "q0": config.q0, "v0": config.v0}));
    let grid = config.t_grid.points();
    let mut files = Vec::new();
    let mut gates = Vec::new();

    let numeric = classical::integrate_eom(&spec, config.q0, config.v0, &grid, config.tol.ode)?;
    let to_rows = |traj: &classical::Trajectory| -> Vec<Vec<f64>> {
        (0..traj.times.len())
            .map(|i| vec![traj.times[i], traj.q[i], traj.p[i]])
            .collect()
    };
    let path = artifact_path(&config.out_dir, "trajectory_numeric", spec.family().label(), &hash, "csv");
    write_csv(&path, "t,q,p", &to_rows(&numeric))?;
    files.push(path);

    let has_closed = matches!(spec.family(), Family::CaseA | Family::CaseB | Family::CaseC)
        && config.q0 == 1.0
        && config.v0 == 0.0;
    if has_closed {
        let closed = classical::closed_form_trajectory(&spec, config.q0, config.v0, &grid)?;
        let path = artifact_path(&config.out_dir, "trajectory_closed", spec.family().label(), &hash, "csv");
        write_csv(&path, "t,q,p", &to_rows(&closed))?;
        files.push(path);
        let mut worst = 0.0f64;
        for i in 0..grid.len() {
            let scale = closed.q[i].abs().max(closed.p[i].abs()).max(1e-3);
            worst = worst.max((closed.q[i] - numeric.q[i]).abs() / scale);
            worst = worst.max((closed.p[i] - numeric.p[i]).abs() / scale);
        }
        gates.push(gate("trajectory_numeric_vs_closed", worst, config.tol.trajectory));
    }

    let passed = gates.iter().all(|g| g.passed);
    Ok(CmdOutcome {
        command: "trajectory",
        passed,
        files,
        gates,
        summary: json!({"spec": spec.provenance(), "points": grid.len(), "closed_form": has_closed}),
    })
}

/// Log-sampled (q, p) orbit plus the family-specific structure gate:
/// closed circle, growing turning points, or decaying turning points.
pub fn cmd_phase_diagram(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "grid": config.t_grid, "q0": config.q0, "v0": config.v0}));
    let points = classical::phase_diagram(
        &spec,
        config.q0,
        config.v0,
        config.t_grid.end,
        config.t_grid.count.max(512),
    )?;
    let rows: Vec<Vec<f64>> = points.iter().map(|&(q, p)| vec![q, p]).collect();
    let path = artifact_path(&config.out_dir, "phase_diagram", spec.family().label(), &hash, "csv");
    write_csv(&path, "q,p", &rows)?;

    let mut gates = Vec::new();
    if config.q0 == 1.0 && config.v0 == 0.0 {
        let scale = spec.m0() * spec.omega0();
        match spec.family() {
            Family::CaseA => {
                let mut worst = 0.0f64;
                for &(q, p) in &points {
                    worst = worst.max((q * q + (p / scale).powi(2) - 1.0).abs());
                }
                gates.push(gate("phase_orbit_circular", worst, config.tol.orbit));
            }
            Family::CaseB | Family::CaseC => {
                let growing = spec.family() == Family::CaseB;
                let mut peaks = Vec::new();
                for i in 1..points.len() - 1 {
                    let a = points[i].0.abs();
                    if a > points[i - 1].0.abs() && a > points[i + 1].0.abs() {
                        peaks.push(a);
                    }
                }
                let violations = peaks
                    .windows(2)
                    .filter(|w| if growing { w[1] <= w[0] } else { w[1] >= w[0] })
                    .count();
                gates.push(gate(
                    if growing {
                        "phase_orbit_turning_points_grow"
                    } else {
                        "phase_orbit_turning_points_decay"
                    },
                    violations as f64,
                    0.0,
                ));
            }
            _ => {}
        }
    }

    let passed = gates.iter().all(|g| g.passed);
    Ok(CmdOutcome {
        command: "phase-diagram",
        passed,
        files: vec![path],
        gates,
        summary: json!({"spec": spec.provenance(), "points": rows.len()}),
    })
}

/// Runs the whole verification battery and writes its JSON report.
pub fn cmd_verify(config: &RunConfig) -> Result<CmdOutcome> {
    let spec = config.spec()?;
    let report = verify::run(config)?;
    let hash = param_hash(&json!({"spec": spec.provenance(), "tol": config.tol}));
    let path = artifact_path(&config.out_dir, "verify", spec.family().label(), &hash, "json");
    write_json(
        &path,
        &json!({
            "spec": spec.provenance(),
            "passed": report.passed,
            "elapsed_seconds": report.elapsed_seconds,
            "gates": report.gates,
        }),
    )?;
    Ok(CmdOutcome {
        command: "verify",
        passed: report.passed,
        files: vec![path],
        gates: report.gates,
        summary: json!({"spec": spec.provenance(), "elapsed_seconds": report.elapsed_seconds}),
    })
}
