use slope_core::estimators::ols;
use slope_core::theory::{cluster_condition, support_conditions};
use slope_core::LinearModel;

use crate::args::CheckArgs;
use crate::report::{CheckConfigEcho, CheckReport};
use crate::tuning_spec::TuningSpec;
use crate::{io, report, CliError, CliResult};

pub fn run_check(args: &CheckArgs) -> CliResult<()> {
    // either a raw OLS vector (scale from --scale, default 1) or a model
    // whose detected orthogonality scale is used
    let (ols_beta, scale, source, n) = match (&args.ols, &args.x, &args.y) {
        (Some(path), None, None) => {
            let v = io::read_vector(path)?;
            let n = v.len();
            (v, args.scale.unwrap_or(1.0), path.display().to_string(), n)
        }
        (None, Some(xp), Some(yp)) => {
            let x = io::read_matrix(xp)?;
            let y = io::read_response(yp)?;
            let model = LinearModel::new(x, y)?;
            let scale = match args.scale {
                Some(c) => c,
                None => model.ortho_scale().ok_or(slope_core::Error::NotOrthogonal)?,
            };
            let n = model.n();
            let beta = ols(&model)?.beta.into_vec();
            (beta, scale, format!("{} / {}", xp.display(), yp.display()), n)
        }
        _ => return Err(CliError::input("provide either --ols or both --x and --y")),
    };

    let spec: TuningSpec = args.lambda.parse()?;
    let lam = spec.resolve(ols_beta.len(), n)?;

    let support = support_conditions(&ols_beta, &lam, scale, args.p0)?;
    let clusters = cluster_condition(&ols_beta, &lam, scale)?;

    let out = CheckReport {
        version: crate::VERSION,
        config: CheckConfigEcho {
            source,
            lambda: lam.as_slice().to_vec(),
            p0: args.p0,
            scale,
        },
        ols_beta,
        support,
        cluster_pairs: clusters.pairs,
        sort_order: clusters.sort_order,
    };
    super::emit(args.out.as_deref(), &report::to_json(&out))
}
