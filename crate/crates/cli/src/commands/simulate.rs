use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DVector;
use rayon::prelude::*;

use slope_core::sim::{summarize, ReplicationResult, SimulationConfig, SimulationContext};
use slope_core::theory::TuningSchedule;
use slope_core::Method;

use crate::args::SimulateArgs;
use crate::report::{to_json, SimulateReport};
use crate::{io, CliError, CliResult};

fn parse_methods(s: &str) -> CliResult<Vec<Method>> {
    s.split(',')
        .map(|m| {
            m.trim()
                .parse::<Method>()
                .map_err(|_| CliError::Input(format!("unknown method '{}'", m.trim())))
        })
        .collect()
}

/// Builds the effective configuration: file < flags, then reconciles the
/// dimension-dependent pieces (beta spec and schedule follow p).
fn resolve_config(args: &SimulateArgs) -> CliResult<SimulationConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let raw = fs::read_to_string(path)?;
            serde_json::from_str::<SimulationConfig>(&raw)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        }
        None => SimulationConfig::signal_denoising(),
    };

    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(p) = args.p {
        cfg.p = p;
    }
    if let Some(sigma) = args.sigma {
        cfg.sigma = sigma;
    }
    if let Some(spec) = &args.clusters {
        cfg.beta.clusters = super::parse_clusters(spec)?;
    }
    if let Some(f) = args.slope_factor {
        cfg.slope_schedule = TuningSchedule::scaled_arithmetic(cfg.p, f)?;
    }
    if let Some(f) = args.lasso_ls_factor {
        cfg.lasso_ls_factor = f;
    }
    if let Some(folds) = args.folds {
        cfg.cv_folds = folds;
    }
    if let Some(g) = args.grid_size {
        cfg.cv_grid_size = g;
    }
    if let Some(r) = args.reps {
        cfg.replications = r;
    }
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(methods) = &args.methods {
        cfg.methods = parse_methods(methods)?;
    }
    if args.normalize {
        cfg.normalize_design = true;
    }

    // keep the dimension-dependent blocks consistent with p
    cfg.beta.p = cfg.p;
    cfg.slope_schedule.p = cfg.p;
    cfg.validate()?;
    Ok(cfg)
}

fn run_rows(ctx: &SimulationContext, jobs: usize) -> CliResult<Vec<ReplicationResult>> {
    let reps = ctx.config().replications;
    let rows: Result<Vec<_>, slope_core::Error> = if jobs == 1 {
        (0..reps).map(|r| ctx.run_replication(r)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs) // 0 = rayon default
            .build()
            .map_err(|e| CliError::Input(e.to_string()))?;
        pool.install(|| (0..reps).into_par_iter().map(|r| ctx.run_replication(r)).collect())
    };
    Ok(rows?)
}

/// One CSV row per replication per method.
fn rows_csv(rows: &[ReplicationResult]) -> String {
    let mut out = String::from("rep,method,mse,recovered,support_recovered\n");
    for row in rows {
        for rec in &row.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                row.rep, rec.method, rec.mse, rec.recovered, rec.support_recovered
            );
        }
    }
    out
}

fn write_overlays(ctx: &SimulationContext, rows: &[ReplicationResult], dir: &Path) -> CliResult<()> {
    use crate::svg::{line_chart, Series};
    let Some(rep0) = rows.iter().find(|r| r.rep == 0) else {
        return Ok(());
    };
    let beta = ctx.beta_for(0);
    let x = ctx.design();
    let truth = x * DVector::from_column_slice(&beta);
    let truth_pts: Vec<(f64, f64)> = truth.iter().enumerate().map(|(i, v)| ((i + 1) as f64, *v)).collect();

    for rec in &rep0.records {
        let Some(bhat) = &rec.beta else { continue };
        let fitted = x * DVector::from_column_slice(bhat);
        let series = [
            Series {
                name: "true signal".into(),
                color: "black".into(),
                points: truth_pts.clone(),
                markers: false,
            },
            Series {
                name: format!("{} fit", rec.method),
                color: "red".into(),
                points: fitted.iter().enumerate().map(|(i, v)| ((i + 1) as f64, *v)).collect(),
                markers: false,
            },
        ];
        let chart = line_chart(
            &format!("Signal overlay, replication 0, {}", rec.method),
            "coordinate",
            "signal value",
            &series,
        );
        let name = format!("signal_overlay_{}.svg", rec.method.as_str().to_lowercase().replace('-', "_"));
        io::write_text(&dir.join(name), &chart)?;
    }
    Ok(())
}

pub fn run_simulate(args: &SimulateArgs) -> CliResult<()> {
    let cfg = resolve_config(args)?;
    let out_dir = super::resolve_out_dir(args.out_dir.clone());

    let ctx = SimulationContext::new(cfg.clone())?;
    let rows = run_rows(&ctx, args.jobs)?;
    let summary = summarize(&rows);

    let report = SimulateReport { version: crate::VERSION, config: cfg, summary };
    let json = to_json(&report);

    io::write_text(&out_dir.join("rows.csv"), &rows_csv(&rows))?;
    io::write_text(&out_dir.join("summary.json"), &json)?;
    if args.svg {
        write_overlays(&ctx, &rows, &out_dir)?;
    }
    print!("{json}");
    Ok(())
}
