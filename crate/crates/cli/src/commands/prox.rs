use slope_core::patterns::DEFAULT_TIE_TOL;
use slope_core::{pattern_of, prox_sorted_l1, project_dual_ball, sorted_l1_norm};

use crate::args::ProxArgs;
use crate::report::{CertificateSummary, ProxReport};
use crate::tuning_spec::TuningSpec;
use crate::{io, report, CliResult};

pub fn run_prox(args: &ProxArgs) -> CliResult<()> {
    let y = io::read_vector(&args.input)?;
    let spec: TuningSpec = args.lambda.parse()?;
    let lam = spec.resolve(y.len(), y.len())?;

    let prox = prox_sorted_l1(&y, &lam)?;
    let cert = project_dual_ball(&y, &lam)?;
    let pattern = pattern_of(&prox, DEFAULT_TIE_TOL);

    let out = ProxReport {
        version: crate::VERSION,
        input: args.input.display().to_string(),
        lambda: lam.as_slice().to_vec(),
        prox: prox.as_slice().to_vec(),
        sorted_l1_norm: sorted_l1_norm(&prox, &lam)?,
        pattern: pattern.entries().to_vec(),
        certificate: CertificateSummary::new(&cert, &prox, &lam),
    };
    super::emit(args.out.as_deref(), &report::to_json(&out))
}
