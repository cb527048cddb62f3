use slope_core::estimators::{debias, debias_signs, lasso_orthogonal, ols, slope_general, slope_orthogonal};
use slope_core::patterns::{pattern_of, SignVector, DEFAULT_TIE_TOL};
use slope_core::{Error, Fit, LinearModel, TuningVector};

use crate::args::FitArgs;
use crate::report::{FitConfigEcho, FitReport};
use crate::tuning_spec::TuningSpec;
use crate::{io, report, CliError, CliResult};

fn slope_fit(model: &LinearModel, lam: &TuningVector, args: &FitArgs) -> CliResult<Fit> {
    if args.general {
        Ok(slope_general(model, lam, args.max_iter, args.tol)?)
    } else {
        Ok(slope_orthogonal(model, lam)?)
    }
}

fn lasso_fit(model: &LinearModel, lambda: f64, args: &FitArgs) -> CliResult<Fit> {
    if args.general {
        let lam = TuningVector::constant(lambda, model.p())?;
        let mut fit = slope_general(model, &lam, args.max_iter, args.tol)?;
        fit.method = slope_core::Method::Lasso;
        Ok(fit)
    } else {
        Ok(lasso_orthogonal(model, lambda)?)
    }
}

pub fn run_fit(args: &FitArgs) -> CliResult<()> {
    let x = io::read_matrix(&args.x)?;
    let y = io::read_response(&args.y)?;
    let model = LinearModel::new(x, y)?;
    let (n, p) = (model.n(), model.p());

    let spec: Option<TuningSpec> = args.lambda.as_deref().map(str::parse).transpose()?;
    let need_spec = || spec.clone().ok_or_else(|| CliError::input("this method needs --lambda"));

    let method: slope_core::Method = args
        .method
        .parse()
        .map_err(|_| CliError::Input(format!("unknown method '{}'", args.method)))?;

    let (fit, lam_used): (Fit, Option<TuningVector>) = match method {
        slope_core::Method::Ols => (ols(&model)?, None),
        slope_core::Method::Slope => {
            let lam = need_spec()?.resolve(p, n)?;
            (slope_fit(&model, &lam, args)?, Some(lam))
        }
        slope_core::Method::Lasso => {
            let lambda = need_spec()?.as_scalar()?;
            let lam = if lambda > 0.0 { Some(TuningVector::constant(lambda, p)?) } else { None };
            (lasso_fit(&model, lambda, args)?, lam)
        }
        slope_core::Method::SlopeLs => {
            let lam = need_spec()?.resolve(p, n)?;
            let base = slope_fit(&model, &lam, args)?;
            let patt = pattern_of(&base.beta, DEFAULT_TIE_TOL);
            if patt.is_zero() {
                return Err(Error::ZeroPattern.into());
            }
            (debias(&model, &patt)?, None)
        }
        slope_core::Method::LassoLs => {
            let lambda = need_spec()?.as_scalar()?;
            let base = lasso_fit(&model, lambda, args)?;
            let signs = SignVector::of(&base.beta);
            if signs.support_size() == 0 {
                return Err(Error::ZeroPattern.into());
            }
            (debias_signs(&model, &signs)?, None)
        }
    };

    let echo = FitConfigEcho {
        x: args.x.display().to_string(),
        y: args.y.display().to_string(),
        method: method.as_str().to_string(),
        lambda: lam_used.as_ref().map(|l| l.as_slice().to_vec()),
        general: args.general,
        max_iter: args.max_iter,
        tol: args.tol,
    };
    let out = FitReport::new(echo, model.ortho_scale(), &fit, lam_used.as_ref());
    super::emit(args.out.as_deref(), &report::to_json(&out))
}
