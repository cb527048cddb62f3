//! The trigonometric-design signal-denoising experiment and empirical
//! pattern-recovery curves.
//!
//! Replications are independent work units: replication `r` draws all of its
//! randomness from ChaCha12 stream `r + 1` of the master seed (stream 0 is
//! reserved), so results are bit-identical no matter how the replications
//! are scheduled across threads.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::estimators::{self, debias, debias_signs, lasso_cv, lasso_orthogonal, mse, ols, slope_orthogonal, CvResult, Fit, Method};
use crate::model::LinearModel;
use crate::patterns::{pattern_equal, pattern_of, PatternVector, SignVector};
use crate::point::Point;
use crate::theory::TuningSchedule;

/// `count` coordinates of absolute value `magnitude`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterSpec {
    pub count: usize,
    pub magnitude: f64,
}

/// A clustered coefficient vector: leading clusters with fixed magnitudes
/// (strictly decreasing), independent uniform random signs, zeros elsewhere.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaSpec {
    pub p: usize,
    pub clusters: Vec<ClusterSpec>,
}

impl BetaSpec {
    pub fn new(p: usize, clusters: Vec<ClusterSpec>) -> Result<Self> {
        let spec = BetaSpec { p, clusters };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let total: usize = self.clusters.iter().map(|c| c.count).sum();
        if total > self.p {
            return Err(Error::InvalidInput("cluster sizes exceed the dimension"));
        }
        for c in &self.clusters {
            if !(c.magnitude > 0.0) || !c.magnitude.is_finite() {
                return Err(Error::InvalidInput("cluster magnitudes must be positive and finite"));
            }
            if c.count == 0 {
                return Err(Error::InvalidInput("cluster sizes must be positive"));
            }
        }
        if self.clusters.windows(2).any(|w| w[0].magnitude <= w[1].magnitude) {
            return Err(Error::InvalidInput("cluster magnitudes must be strictly decreasing"));
        }
        Ok(())
    }

    /// Deterministic draw of the coefficient vector.
    pub fn generate(&self, seed: u64) -> Result<Point> {
        self.validate()?;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Ok(self.generate_with(&mut rng))
    }

    fn generate_with<R: Rng>(&self, rng: &mut R) -> Point {
        let mut beta = alloc::vec![0.0; self.p];
        let mut i = 0;
        for c in &self.clusters {
            for _ in 0..c.count {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                beta[i] = sign * c.magnitude;
                i += 1;
            }
        }
        Point::from_computed(beta)
    }
}

/// The orthogonal trigonometric design: row `i = 1..n`, frequency pairs
/// `j = 1..p/2` with `X_{i,2j−1} = sin(2πij/n)`, `X_{i,2j} = cos(2πij/n)`.
/// Satisfies `X'X = (n/2)·I_p` up to floating error.
pub fn trig_design(n: usize, p: usize) -> Result<DMatrix<f64>> {
    if p == 0 || p % 2 != 0 {
        return Err(Error::InvalidInput("trig design needs even p >= 2"));
    }
    if p >= n {
        return Err(Error::InvalidInput("trig design needs p < n"));
    }
    // j < n/2 keeps every frequency non-degenerate; implied by p < n
    let two_pi = 2.0 * core::f64::consts::PI;
    Ok(DMatrix::from_fn(n, p, |row, col| {
        let i = (row + 1) as f64;
        let j = (col / 2 + 1) as f64;
        let angle = two_pi * i * j / n as f64;
        if col % 2 == 0 {
            libm::sin(angle)
        } else {
            libm::cos(angle)
        }
    }))
}

/// Full configuration of the denoising experiment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimulationConfig {
    pub n: usize,
    pub p: usize,
    pub beta: BetaSpec,
    pub sigma: f64,
    pub slope_schedule: TuningSchedule,
    /// LASSO-LS refits on the sign pattern of the LASSO at
    /// `lasso_ls_factor · λ_cv`.
    pub lasso_ls_factor: f64,
    pub cv_folds: usize,
    pub cv_grid_size: usize,
    pub replications: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    /// Rescale the design by √2 so that `X'X = n·I` instead of `(n/2)·I`.
    pub normalize_design: bool,
}

impl SimulationConfig {
    /// The reference signal-denoising experiment: `n = 300`, `p = 100`,
    /// two clusters of 20 coordinates at magnitudes 100 and 80, `σ = 30`,
    /// SLOPE tuned by the arithmetic sequence with slope `3.5·σ`, LASSO-LS
    /// factor 5, 5-fold CV over a 50-point grid.
    pub fn signal_denoising() -> Self {
        let sigma = 30.0;
        SimulationConfig {
            n: 300,
            p: 100,
            beta: BetaSpec {
                p: 100,
                clusters: alloc::vec![
                    ClusterSpec { count: 20, magnitude: 100.0 },
                    ClusterSpec { count: 20, magnitude: 80.0 },
                ],
            },
            sigma,
            slope_schedule: TuningSchedule::scaled_arithmetic(100, 3.5 * sigma).expect("valid schedule"),
            lasso_ls_factor: 5.0,
            cv_folds: 5,
            cv_grid_size: 50,
            replications: 500,
            master_seed: 1,
            methods: Method::ALL.to_vec(),
            normalize_design: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < self.p {
            return Err(Error::InvalidInput("need n >= p"));
        }
        if self.beta.p != self.p {
            return Err(Error::DimensionMismatch { expected: self.p, got: self.beta.p });
        }
        self.beta.validate()?;
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidInput("sigma must be non-negative and finite"));
        }
        if self.slope_schedule.p != self.p {
            return Err(Error::DimensionMismatch { expected: self.p, got: self.slope_schedule.p });
        }
        if !(self.lasso_ls_factor > 0.0) || !self.lasso_ls_factor.is_finite() {
            return Err(Error::InvalidInput("lasso_ls_factor must be positive"));
        }
        if self.replications == 0 {
            return Err(Error::InvalidInput("need at least one replication"));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidInput("no methods requested"));
        }
        Ok(())
    }
}

/// Per-method outcome of one replication.
#[derive(Debug, Clone)]
pub struct MethodRecord {
    pub method: Method,
    pub mse: f64,
    pub beta: Option<Point>,
    pub pattern: Option<PatternVector>,
    pub recovered: bool,
    pub support_recovered: bool,
    pub error: Option<String>,
}

impl MethodRecord {
    fn failed(method: Method, error: String) -> Self {
        MethodRecord {
            method,
            mse: f64::NAN,
            beta: None,
            pattern: None,
            recovered: false,
            support_recovered: false,
            error: Some(error),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReplicationResult {
    pub rep: usize,
    /// RNG stream of this replication under the master seed.
    pub rng_stream: u64,
    pub records: Vec<MethodRecord>,
}

/// Precomputed design shared by all replications of one experiment.
pub struct SimulationContext {
    config: SimulationConfig,
    x: DMatrix<f64>,
}

impl SimulationContext {
    pub fn new(config: SimulationConfig) -> Result<Self> {
        config.validate()?;
        let mut x = trig_design(config.n, config.p)?;
        if config.normalize_design {
            x *= libm::sqrt(2.0);
        }
        Ok(SimulationContext { config, x })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.x
    }

    /// Runs replication `rep` (0-based) on RNG stream `rep + 1`.
    pub fn run_replication(&self, rep: usize) -> Result<ReplicationResult> {
        let cfg = &self.config;
        let stream = rep as u64 + 1;
        let mut rng = ChaCha12Rng::seed_from_u64(cfg.master_seed);
        rng.set_stream(stream);

        let beta = cfg.beta.generate_with(&mut rng);
        let beta_patt = pattern_of(&beta, 0.0);

        let mut y = &self.x * DVector::from_column_slice(&beta);
        if cfg.sigma > 0.0 {
            let noise = Normal::new(0.0, cfg.sigma).map_err(|_| Error::InvalidInput("bad sigma"))?;
            for v in y.iter_mut() {
                *v += noise.sample(&mut rng);
            }
        }
        let cv_seed: u64 = rng.random();
        let model = LinearModel::new(self.x.clone(), y)?;

        let lam = cfg.slope_schedule.tuning_for(cfg.n)?;

        let needs_cv = cfg.methods.iter().any(|m| matches!(m, Method::Lasso | Method::LassoLs));
        let cv: Option<core::result::Result<CvResult, Error>> = needs_cv.then(|| {
            let grid = estimators::default_cv_grid(&model, cfg.cv_grid_size)?;
            lasso_cv(&model, &grid, cfg.cv_folds, cv_seed)
        });

        let needs_slope = cfg.methods.iter().any(|m| matches!(m, Method::Slope | Method::SlopeLs));
        let slope_fit: Option<core::result::Result<Fit, Error>> =
            needs_slope.then(|| slope_orthogonal(&model, &lam));

        let mut records = Vec::with_capacity(cfg.methods.len());
        for &method in &cfg.methods {
            let fit: core::result::Result<Fit, Error> = match method {
                Method::Ols => ols(&model),
                Method::Slope => slope_fit.clone().expect("slope fit computed"),
                Method::SlopeLs => slope_fit.clone().expect("slope fit computed").and_then(|f| {
                    let patt = pattern_of(&f.beta, 0.0);
                    debias(&model, &patt)
                }),
                Method::Lasso => cv.clone().expect("cv computed").and_then(|cv| lasso_orthogonal(&model, cv.lambda_cv)),
                Method::LassoLs => cv.clone().expect("cv computed").and_then(|cv| {
                    let strong = lasso_orthogonal(&model, cfg.lasso_ls_factor * cv.lambda_cv)?;
                    debias_signs(&model, &SignVector::of(&strong.beta))
                }),
            };
            records.push(match fit {
                Ok(f) => self.record_of(method, &f, &beta, &beta_patt),
                Err(e) => MethodRecord::failed(method, estimators::error_message(&e)),
            });
        }
        Ok(ReplicationResult { rep, rng_stream: stream, records })
    }

    fn record_of(&self, method: Method, fit: &Fit, beta: &Point, beta_patt: &PatternVector) -> MethodRecord {
        let patt = pattern_of(&fit.beta, 0.0);
        let recovered = pattern_equal(&patt, beta_patt).unwrap_or(false);
        let support_recovered = patt
            .entries()
            .iter()
            .zip(beta_patt.entries())
            .all(|(a, b)| (*a != 0) == (*b != 0));
        MethodRecord {
            method,
            mse: mse(beta, &fit.beta).unwrap_or(f64::NAN),
            beta: Some(fit.beta.clone()),
            pattern: Some(patt),
            recovered,
            support_recovered,
            error: None,
        }
    }

    /// Replays the coefficient draw of replication `rep` (the draw precedes
    /// the noise on its stream, so the replay is exact).
    pub fn beta_for(&self, rep: usize) -> Point {
        let mut rng = ChaCha12Rng::seed_from_u64(self.config.master_seed);
        rng.set_stream(rep as u64 + 1);
        self.config.beta.generate_with(&mut rng)
    }
}

/// Aggregate of one method over the replications.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MethodSummary {
    pub method: Method,
    pub mean_mse: f64,
    pub sd_mse: f64,
    pub recovery_rate: f64,
    pub support_recovery_rate: f64,
    /// Replications that produced a fit.
    pub successes: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonteCarloSummary {
    pub replications: usize,
    pub methods: Vec<MethodSummary>,
}

/// Order-independent aggregation (rows are sorted by replication index
/// before any accumulation).
pub fn summarize(rows: &[ReplicationResult]) -> MonteCarloSummary {
    let mut sorted: Vec<&ReplicationResult> = rows.iter().collect();
    sorted.sort_by_key(|r| r.rep);

    let mut order: Vec<Method> = Vec::new();
    for row in &sorted {
        for rec in &row.records {
            if !order.contains(&rec.method) {
                order.push(rec.method);
            }
        }
    }

    let methods = order
        .iter()
        .map(|&method| {
            let mut n = 0usize;
            let mut failures = 0usize;
            let mut sum = 0.0;
            let mut recovered = 0usize;
            let mut support = 0usize;
            for row in &sorted {
                for rec in row.records.iter().filter(|r| r.method == method) {
                    if rec.error.is_some() {
                        failures += 1;
                        continue;
                    }
                    n += 1;
                    sum += rec.mse;
                    recovered += usize::from(rec.recovered);
                    support += usize::from(rec.support_recovered);
                }
            }
            let mean = if n > 0 { sum / n as f64 } else { f64::NAN };
            let mut ss = 0.0;
            for row in &sorted {
                for rec in row.records.iter().filter(|r| r.method == method && r.error.is_none()) {
                    ss += (rec.mse - mean) * (rec.mse - mean);
                }
            }
            let sd = if n > 1 { libm::sqrt(ss / (n - 1) as f64) } else { f64::NAN };
            MethodSummary {
                method,
                mean_mse: mean,
                sd_mse: sd,
                recovery_rate: if n > 0 { recovered as f64 / n as f64 } else { f64::NAN },
                support_recovery_rate: if n > 0 { support as f64 / n as f64 } else { f64::NAN },
                successes: n,
                failures,
            }
        })
        .collect();
    MonteCarloSummary { replications: sorted.len(), methods }
}

/// Sequential Monte Carlo driver; callers wanting parallelism can map
/// [`SimulationContext::run_replication`] over `0..replications` themselves
/// and feed the rows to [`summarize`] — the aggregation is order-independent.
pub fn monte_carlo(config: &SimulationConfig) -> Result<(Vec<ReplicationResult>, MonteCarloSummary)> {
    let ctx = SimulationContext::new(config.clone())?;
    let rows: Result<Vec<ReplicationResult>> =
        (0..config.replications).map(|r| ctx.run_replication(r)).collect();
    let rows = rows?;
    let summary = summarize(&rows);
    Ok((rows, summary))
}

/// Configuration of the pattern-recovery-versus-n experiment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecoveryCurveConfig {
    pub p: usize,
    pub beta: BetaSpec,
    pub sigma: f64,
    pub schedule: TuningSchedule,
    pub n_list: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    pub normalize_design: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecoveryPoint {
    pub n: usize,
    pub recovery_rate: f64,
    pub replications: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RecoveryCurve {
    pub points: Vec<RecoveryPoint>,
    /// Smallest adjacent rate increment; non-negative iff the curve is
    /// non-decreasing in n.
    pub min_adjacent_delta: f64,
    pub non_decreasing: bool,
}

/// Empirical frequency of exact pattern recovery by SLOPE as n grows.
pub fn recovery_curve(cfg: &RecoveryCurveConfig) -> Result<RecoveryCurve> {
    if cfg.n_list.is_empty() {
        return Err(Error::InvalidInput("n_list must be nonempty"));
    }
    if cfg.n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("n_list must be strictly increasing"));
    }
    if cfg.replications == 0 {
        return Err(Error::InvalidInput("need at least one replication"));
    }
    if cfg.beta.p != cfg.p || cfg.schedule.p != cfg.p {
        return Err(Error::InvalidInput("beta spec, schedule and p must agree"));
    }
    cfg.beta.validate()?;
    if !(cfg.sigma >= 0.0) || !cfg.sigma.is_finite() {
        return Err(Error::InvalidInput("sigma must be non-negative and finite"));
    }

    let r = cfg.replications;
    let mut points = Vec::with_capacity(cfg.n_list.len());
    for (ni, &n) in cfg.n_list.iter().enumerate() {
        let mut x = trig_design(n, cfg.p)?;
        if cfg.normalize_design {
            x *= libm::sqrt(2.0);
        }
        let lam = cfg.schedule.tuning_for(n)?;
        let mut recovered = 0usize;
        for rep in 0..r {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.master_seed);
            rng.set_stream((ni * r + rep) as u64 + 1);
            let beta = cfg.beta.generate_with(&mut rng);
            let beta_patt = pattern_of(&beta, 0.0);

            let mut y = &x * DVector::from_column_slice(&beta);
            if cfg.sigma > 0.0 {
                let noise = Normal::new(0.0, cfg.sigma).map_err(|_| Error::InvalidInput("bad sigma"))?;
                for v in y.iter_mut() {
                    *v += noise.sample(&mut rng);
                }
            }
            let model = LinearModel::new(x.clone(), y)?;
            let fit = slope_orthogonal(&model, &lam)?;
            if pattern_equal(&pattern_of(&fit.beta, 0.0), &beta_patt)? {
                recovered += 1;
            }
        }
        points.push(RecoveryPoint { n, recovery_rate: recovered as f64 / r as f64, replications: r });
    }

    let min_adjacent_delta = points
        .windows(2)
        .map(|w| w[1].recovery_rate - w[0].recovery_rate)
        .fold(f64::INFINITY, f64::min);
    let non_decreasing = points.len() < 2 || min_adjacent_delta >= 0.0;
    Ok(RecoveryCurve { points, min_adjacent_delta, non_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::detect_ortho_scale;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    #[test]
    fn trig_design_reference_shape() {
        let x = trig_design(300, 100).unwrap();
        assert_eq!((x.nrows(), x.ncols()), (300, 100));
        let gram = x.tr_mul(&x);
        let c = detect_ortho_scale(&gram).expect("orthogonal");
        assert_abs_diff_eq!(c, 150.0, epsilon = 1e-8 * 150.0);
    }

    #[test]
    fn trig_design_small_norms() {
        let x = trig_design(8, 2).unwrap();
        let gram = x.tr_mul(&x);
        assert_abs_diff_eq!(gram[(0, 0)], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gram[(1, 1)], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gram[(0, 1)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn trig_design_orthogonal_across_shapes() {
        // odd and even n alike
        for (n, p) in [(50usize, 10usize), (121, 8), (33, 4), (301, 20)] {
            let x = trig_design(n, p).unwrap();
            let gram = x.tr_mul(&x);
            let c = detect_ortho_scale(&gram).unwrap_or_else(|| panic!("({n},{p}) not orthogonal"));
            assert_abs_diff_eq!(c, n as f64 / 2.0, epsilon = 1e-8 * n as f64);
        }
    }

    #[test]
    fn trig_design_validates_inputs() {
        assert!(trig_design(10, 3).is_err());
        assert!(trig_design(4, 4).is_err());
        assert!(trig_design(10, 0).is_err());
    }

    fn small_beta_spec() -> BetaSpec {
        BetaSpec::new(
            6,
            vec![ClusterSpec { count: 2, magnitude: 3.0 }, ClusterSpec { count: 2, magnitude: 2.0 }],
        )
        .unwrap()
    }

    #[test]
    fn beta_spec_generates_clusters_with_random_signs() {
        let beta = small_beta_spec().generate(11).unwrap();
        let patt = pattern_of(&beta, 0.0);
        assert_eq!(patt.num_clusters(), 2);
        assert_eq!(patt.cluster_sizes(), &[2, 2]);
        assert_eq!(beta.iter().filter(|v| **v == 0.0).count(), 2);
        // deterministic in the seed
        assert_eq!(beta, small_beta_spec().generate(11).unwrap());
    }

    #[test]
    fn beta_spec_zero_clusters_gives_zero_vector() {
        let spec = BetaSpec::new(4, vec![]).unwrap();
        assert_eq!(spec.generate(0).unwrap().as_slice(), &[0.0; 4]);
    }

    #[test]
    fn beta_spec_validation() {
        assert!(BetaSpec::new(3, vec![ClusterSpec { count: 4, magnitude: 1.0 }]).is_err());
        assert!(BetaSpec::new(4, vec![ClusterSpec { count: 1, magnitude: 0.0 }]).is_err());
        assert!(BetaSpec::new(
            4,
            vec![ClusterSpec { count: 1, magnitude: 1.0 }, ClusterSpec { count: 1, magnitude: 1.0 }]
        )
        .is_err());
    }

    fn tiny_config() -> SimulationConfig {
        SimulationConfig {
            n: 24,
            p: 6,
            beta: small_beta_spec(),
            sigma: 0.5,
            slope_schedule: TuningSchedule::scaled_arithmetic(6, 3.0).unwrap(),
            lasso_ls_factor: 5.0,
            cv_folds: 3,
            cv_grid_size: 8,
            replications: 3,
            master_seed: 7,
            methods: Method::ALL.to_vec(),
            normalize_design: false,
        }
    }

    #[test]
    fn noiseless_replication_is_exact() {
        let mut cfg = tiny_config();
        cfg.sigma = 0.0;
        let ctx = SimulationContext::new(cfg).unwrap();
        let rep = ctx.run_replication(0).unwrap();
        for rec in &rep.records {
            assert!(rec.error.is_none(), "{:?} failed: {:?}", rec.method, rec.error);
            if matches!(rec.method, Method::Ols | Method::SlopeLs) {
                assert!(rec.mse < 1e-18, "{:?} mse = {}", rec.method, rec.mse);
            }
        }
        let sls = rep.records.iter().find(|r| r.method == Method::SlopeLs).unwrap();
        assert!(sls.recovered);
    }

    #[test]
    fn replications_are_deterministic() {
        let ctx = SimulationContext::new(tiny_config()).unwrap();
        let a = ctx.run_replication(1).unwrap();
        let b = ctx.run_replication(1).unwrap();
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert_eq!(ra.mse.to_bits(), rb.mse.to_bits());
            assert_eq!(ra.recovered, rb.recovered);
        }
    }

    #[test]
    fn monte_carlo_aggregates_all_methods() {
        let cfg = tiny_config();
        let (rows, summary) = monte_carlo(&cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(summary.replications, 3);
        assert_eq!(summary.methods.len(), 5);
        for m in &summary.methods {
            assert_eq!(m.successes + m.failures, 3);
        }
    }

    #[test]
    fn summarize_is_order_independent() {
        let cfg = tiny_config();
        let ctx = SimulationContext::new(cfg).unwrap();
        let mut rows: Vec<ReplicationResult> = (0..3).map(|r| ctx.run_replication(r).unwrap()).collect();
        let forward = summarize(&rows);
        rows.reverse();
        assert_eq!(forward, summarize(&rows));
    }

    #[test]
    fn recovery_curve_noiseless_is_one() {
        // n large enough that the n^{2/3} shrinkage stays below the smallest
        // cluster magnitude while the gaps still pool each cluster
        let cfg = RecoveryCurveConfig {
            p: 6,
            beta: small_beta_spec(),
            sigma: 0.0,
            schedule: TuningSchedule::arithmetic_n23(6).unwrap(),
            n_list: vec![1000, 2000],
            replications: 4,
            master_seed: 3,
            normalize_design: false,
        };
        let curve = recovery_curve(&cfg).unwrap();
        assert!(curve.non_decreasing);
        for pt in &curve.points {
            assert_eq!(pt.recovery_rate, 1.0);
        }
    }

    #[test]
    fn single_replication_monte_carlo_reduces_to_run_replication() {
        let mut cfg = tiny_config();
        cfg.replications = 1;
        let (rows, summary) = monte_carlo(&cfg).unwrap();
        let ctx = SimulationContext::new(cfg).unwrap();
        let direct = ctx.run_replication(0).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(summary.replications, 1);
        for (a, b) in rows[0].records.iter().zip(&direct.records) {
            assert_eq!(a.mse.to_bits(), b.mse.to_bits());
        }
    }

    #[test]
    fn doubling_sigma_quadruples_ols_mse() {
        let base = SimulationConfig {
            n: 60,
            p: 20,
            beta: BetaSpec::new(20, vec![ClusterSpec { count: 4, magnitude: 10.0 }]).unwrap(),
            sigma: 3.0,
            slope_schedule: TuningSchedule::scaled_arithmetic(20, 1.0).unwrap(),
            lasso_ls_factor: 5.0,
            cv_folds: 5,
            cv_grid_size: 10,
            replications: 500,
            master_seed: 99,
            methods: alloc::vec![Method::Ols],
            normalize_design: false,
        };
        let mut doubled = base.clone();
        doubled.sigma = 6.0;
        let (_, s1) = monte_carlo(&base).unwrap();
        let (_, s2) = monte_carlo(&doubled).unwrap();
        let ratio = s2.methods[0].mean_mse / s1.methods[0].mean_mse;
        assert!((ratio - 4.0).abs() <= 0.4, "ratio {ratio}");
    }

    #[test]
    fn recovery_curve_pinned_at_zero_under_constant_ratio_schedule() {
        // penalty scale grows like n while the signal stays tiny: the fit is
        // identically zero, so a nonzero pattern is never recovered
        let cfg = RecoveryCurveConfig {
            p: 2,
            beta: BetaSpec::new(
                2,
                vec![ClusterSpec { count: 1, magnitude: 0.1 }, ClusterSpec { count: 1, magnitude: 0.05 }],
            )
            .unwrap(),
            sigma: 0.5,
            schedule: TuningSchedule::constant_ratio(2, 1.0).unwrap(),
            n_list: vec![100, 400],
            replications: 10,
            master_seed: 17,
            normalize_design: false,
        };
        let curve = recovery_curve(&cfg).unwrap();
        for pt in &curve.points {
            assert_eq!(pt.recovery_rate, 0.0);
        }
    }

    #[test]
    fn recovery_curve_validates() {
        let mut cfg = RecoveryCurveConfig {
            p: 6,
            beta: small_beta_spec(),
            sigma: 1.0,
            schedule: TuningSchedule::arithmetic_n23(6).unwrap(),
            n_list: vec![40, 20],
            replications: 2,
            master_seed: 0,
            normalize_design: false,
        };
        assert!(recovery_curve(&cfg).is_err());
        cfg.n_list = vec![4];
        assert!(recovery_curve(&cfg).is_err());
    }
}
