//! JSON report schemas. Every report embeds the tool version and the
//! resolved configuration that produced it.

use serde::Serialize;

use slope_core::sim::{MonteCarloSummary, RecoveryCurve, RecoveryCurveConfig, SimulationConfig};
use slope_core::sorted_l1::DualCertificate;
use slope_core::theory::SupportConditionReport;
use slope_core::{Fit, TuningVector};

#[derive(Serialize)]
pub struct CertificateSummary {
    pub pi: Vec<f64>,
    pub slack: Vec<f64>,
    pub max_violation: f64,
    /// `|π'·β̂ − J_Λ(β̂)|`
    pub pairing_gap: f64,
}

impl CertificateSummary {
    pub fn new(cert: &DualCertificate, beta: &[f64], lam: &TuningVector) -> Self {
        let pairing: f64 = cert.pi.iter().zip(beta).map(|(a, b)| a * b).sum();
        let j = slope_core::sorted_l1_norm(beta, lam).unwrap_or(f64::NAN);
        CertificateSummary {
            pi: cert.pi.as_slice().to_vec(),
            slack: cert.slack.clone(),
            max_violation: cert.max_violation(),
            pairing_gap: (pairing - j).abs(),
        }
    }
}

#[derive(Serialize)]
pub struct ProxReport {
    pub version: &'static str,
    pub input: String,
    pub lambda: Vec<f64>,
    pub prox: Vec<f64>,
    pub sorted_l1_norm: f64,
    pub pattern: Vec<i32>,
    pub certificate: CertificateSummary,
}

#[derive(Serialize)]
pub struct FitConfigEcho {
    pub x: String,
    pub y: String,
    pub method: String,
    pub lambda: Option<Vec<f64>>,
    pub general: bool,
    pub max_iter: usize,
    pub tol: f64,
}

#[derive(Serialize)]
pub struct FitReport {
    pub version: &'static str,
    pub config: FitConfigEcho,
    pub ortho_scale: Option<f64>,
    pub method: String,
    pub beta: Vec<f64>,
    pub pattern: Vec<i32>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub cluster_order_ok: Option<bool>,
    pub certificate: Option<CertificateSummary>,
}

impl FitReport {
    pub fn new(config: FitConfigEcho, ortho_scale: Option<f64>, fit: &Fit, lam: Option<&TuningVector>) -> Self {
        let pattern = slope_core::pattern_of(&fit.beta, slope_core::patterns::DEFAULT_TIE_TOL);
        let certificate = match (&fit.certificate, lam) {
            (Some(cert), Some(lam)) => Some(CertificateSummary::new(cert, &fit.beta, lam)),
            _ => None,
        };
        FitReport {
            version: crate::VERSION,
            config,
            ortho_scale,
            method: fit.method.as_str().to_string(),
            beta: fit.beta.as_slice().to_vec(),
            pattern: pattern.entries().to_vec(),
            objective: fit.objective,
            iterations: fit.iterations,
            converged: fit.converged,
            cluster_order_ok: fit.cluster_order_ok,
            certificate,
        }
    }
}

#[derive(Serialize)]
pub struct CheckConfigEcho {
    pub source: String,
    pub lambda: Vec<f64>,
    pub p0: usize,
    pub scale: f64,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub version: &'static str,
    pub config: CheckConfigEcho,
    pub ols_beta: Vec<f64>,
    pub support: SupportConditionReport,
    /// Adjacent sorted positions satisfying the clustering gap condition.
    pub cluster_pairs: Vec<(usize, usize)>,
    /// Descending-|β̂OLS| permutation the pairs refer to.
    pub sort_order: Vec<usize>,
}

#[derive(Serialize)]
pub struct SimulateReport {
    pub version: &'static str,
    pub config: SimulationConfig,
    pub summary: MonteCarloSummary,
}

#[derive(Serialize)]
pub struct CurveReport {
    pub version: &'static str,
    pub config: RecoveryCurveConfig,
    pub curve: RecoveryCurve,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
