use std::fmt::Write as _;

use slope_core::sim::{recovery_curve, BetaSpec, RecoveryCurveConfig};
use slope_core::theory::TuningSchedule;

use crate::args::RecoveryCurveArgs;
use crate::report::{to_json, CurveReport};
use crate::{io, CliError, CliResult};

fn parse_schedule(s: &str, p: usize) -> CliResult<TuningSchedule> {
    let (kind, rest) = match s.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (s, None),
    };
    let num = |r: Option<&str>, what: &str| -> CliResult<f64> {
        r.ok_or_else(|| CliError::Input(format!("{what} needs a value")))?
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("bad {what} value")))
    };
    match kind {
        "n23" => Ok(TuningSchedule::arithmetic_n23(p)?),
        "arith" => Ok(TuningSchedule::scaled_arithmetic(p, num(rest, "arith")?)?),
        "ratio" => Ok(TuningSchedule::constant_ratio(p, num(rest, "ratio")?)?),
        other => Err(CliError::Input(format!("unknown schedule '{other}'; use n23, arith:f or ratio:r"))),
    }
}

fn curve_csv(report: &CurveReport) -> String {
    let mut out = String::from("n,recovery_rate,replications\n");
    for pt in &report.curve.points {
        let _ = writeln!(out, "{},{},{}", pt.n, pt.recovery_rate, pt.replications);
    }
    out
}

pub fn run_recovery_curve(args: &RecoveryCurveArgs) -> CliResult<()> {
    let clusters = super::parse_clusters(&args.clusters)?;
    let cfg = RecoveryCurveConfig {
        p: args.p,
        beta: BetaSpec { p: args.p, clusters },
        sigma: args.sigma,
        schedule: parse_schedule(&args.schedule, args.p)?,
        n_list: super::parse_usize_list(&args.n_list)?,
        replications: args.reps,
        master_seed: args.seed,
        normalize_design: args.normalize,
    };
    let curve = recovery_curve(&cfg)?;
    let report = CurveReport { version: crate::VERSION, config: cfg, curve };
    let json = to_json(&report);

    let out_dir = super::resolve_out_dir(args.out_dir.clone());
    io::write_text(&out_dir.join("curve.csv"), &curve_csv(&report))?;
    io::write_text(&out_dir.join("summary.json"), &json)?;
    if args.svg {
        use crate::svg::{line_chart, Series};
        let points = report
            .curve
            .points
            .iter()
            .map(|pt| ((pt.n as f64).log10(), pt.recovery_rate))
            .collect();
        let chart = line_chart(
            "Pattern recovery rate vs sample size",
            "log10(n)",
            "recovery rate",
            &[Series { name: "recovery".into(), color: "steelblue".into(), points, markers: true }],
        );
        io::write_text(&out_dir.join("curve.svg"), &chart)?;
    }
    print!("{json}");
    Ok(())
}
