//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "slope",
    version,
    about = "Sorted-l1 (SLOPE) estimation under orthogonal design: prox kernels, fits, cluster/support condition checks and Monte Carlo experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Apply the sorted-l1 prox to a vector and report the dual certificate
    /// and extracted pattern.
    Prox(ProxArgs),
    /// Fit a model from CSV design/response files.
    Fit(FitArgs),
    /// Evaluate the cluster and support conditions on an OLS estimate.
    Check(CheckArgs),
    /// Run the signal-denoising Monte Carlo experiment.
    Simulate(SimulateArgs),
    /// Empirical pattern-recovery rate as the sample size grows.
    RecoveryCurve(RecoveryCurveArgs),
}

#[derive(Args)]
pub struct ProxArgs {
    /// Input vector (single-column CSV).
    #[arg(long)]
    pub input: PathBuf,
    /// Tuning spec: const:v | arith:a[,b] | n23[:N] | file:path | a number.
    #[arg(long)]
    pub lambda: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FitArgs {
    /// Design matrix (headerless CSV, rows = observations).
    #[arg(long)]
    pub x: PathBuf,
    /// Response vector (single-column CSV).
    #[arg(long)]
    pub y: PathBuf,
    /// One of: ols | slope | lasso | slope-ls | lasso-ls.
    #[arg(long)]
    pub method: String,
    /// Tuning spec (required for every method except ols). LASSO methods
    /// need a scalar (a number or const:v).
    #[arg(long)]
    pub lambda: Option<String>,
    /// Use the iterative solver; required when X'X is not a scaled identity.
    #[arg(long)]
    pub general: bool,
    /// Iteration cap for the iterative solver.
    #[arg(long, default_value_t = slope_core::estimators::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Certificate tolerance for the iterative solver.
    #[arg(long, default_value_t = slope_core::estimators::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    /// OLS estimate as a single-column CSV (alternative to --x/--y).
    #[arg(long, conflicts_with_all = ["x", "y"])]
    pub ols: Option<PathBuf>,
    /// Design matrix; must be orthogonal (X'X = c·I).
    #[arg(long, requires = "y")]
    pub x: Option<PathBuf>,
    /// Response vector.
    #[arg(long, requires = "x")]
    pub y: Option<PathBuf>,
    /// Tuning spec.
    #[arg(long)]
    pub lambda: String,
    /// Size of the declared support (leading coordinates).
    #[arg(long)]
    pub p0: usize,
    /// Scale c in the conditions; with --ols defaults to 1, with --x/--y the
    /// detected orthogonality scale is used.
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// JSON configuration file (same schema as the emitted summary's
    /// `config` block); flags below override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Coefficient clusters, e.g. 20@100,20@80.
    #[arg(long)]
    pub clusters: Option<String>,
    /// Arithmetic SLOPE factor f (λᵢ = f·(p+1−i)).
    #[arg(long)]
    pub slope_factor: Option<f64>,
    /// LASSO-LS threshold multiple of λ_cv.
    #[arg(long)]
    pub lasso_ls_factor: Option<f64>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Number of replications.
    #[arg(long)]
    pub reps: Option<usize>,
    /// Master seed; every replication derives its own RNG stream from it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated subset of: ols,slope,lasso,slope-ls,lasso-ls.
    #[arg(long)]
    pub methods: Option<String>,
    /// Rescale the design so X'X = n·I instead of (n/2)·I.
    #[arg(long)]
    pub normalize: bool,
    /// Worker threads for the replication loop (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Output directory (default: $SLOPE_OUT_DIR or ./slope-out).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Also emit SVG figures (fitted-signal overlays from replication 0).
    #[arg(long)]
    pub svg: bool,
}

#[derive(Args)]
pub struct RecoveryCurveArgs {
    #[arg(long)]
    pub p: usize,
    /// Coefficient clusters, e.g. 2@3,2@2.
    #[arg(long)]
    pub clusters: String,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Schedule: n23 | arith:f | ratio:r.
    #[arg(long, default_value = "n23")]
    pub schedule: String,
    /// Comma-separated sample sizes, strictly increasing.
    #[arg(long)]
    pub n_list: String,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub normalize: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}
