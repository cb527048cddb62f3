//! OLS, SLOPE, LASSO, cross-validation and least-squares debiasing.
//!
//! Under an orthogonal design `X'X = c·I` the SLOPE solution is the prox of
//! the OLS estimator, `β̂ = prox_{J_{Λ/c}}(β̂OLS)`, and `c·(β̂OLS − β̂)` is the
//! projection of `c·β̂OLS` onto `C_Λ`. The general path minimizes
//! `½‖Y−Xb‖² + J_Λ(b)` by accelerated proximal gradient (FISTA) on the Gram
//! form of the problem and stops once the dual certificate
//! `X'(Y−Xβ̂) ∈ C_Λ`, `(X'(Y−Xβ̂))'β̂ = J_Λ(β̂)` holds at the requested
//! tolerance.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::model::LinearModel;
use crate::patterns::{lasso_pattern_matrix, pattern_matrix, PatternKind, PatternMatrix, PatternVector, SignVector};
use crate::point::Point;
use crate::sorted_l1::{in_dual_ball, prox_sorted_l1, project_dual_ball, slack_vector, sorted_l1_norm, DualCertificate};
use crate::tuning::TuningVector;

/// Default iteration cap of the general solver.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Default certificate tolerance of the general solver.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    #[cfg_attr(feature = "serde", serde(rename = "OLS"))]
    Ols,
    #[cfg_attr(feature = "serde", serde(rename = "SLOPE"))]
    Slope,
    #[cfg_attr(feature = "serde", serde(rename = "LASSO"))]
    Lasso,
    #[cfg_attr(feature = "serde", serde(rename = "SLOPE-LS"))]
    SlopeLs,
    #[cfg_attr(feature = "serde", serde(rename = "LASSO-LS"))]
    LassoLs,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Ols => "OLS",
            Method::Slope => "SLOPE",
            Method::Lasso => "LASSO",
            Method::SlopeLs => "SLOPE-LS",
            Method::LassoLs => "LASSO-LS",
        }
    }

    pub const ALL: [Method; 5] = [Method::Ols, Method::Slope, Method::Lasso, Method::SlopeLs, Method::LassoLs];
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ols" => Ok(Method::Ols),
            "slope" => Ok(Method::Slope),
            "lasso" => Ok(Method::Lasso),
            "slope-ls" => Ok(Method::SlopeLs),
            "lasso-ls" => Ok(Method::LassoLs),
            _ => Err(Error::InvalidInput("unknown method tag")),
        }
    }
}

/// An estimate with its diagnostics.
///
/// `objective` is `½‖Y−Xβ‖² + penalty(β)` at the returned point (penalty is
/// zero for OLS and the least-squares refits). `cluster_order_ok` is set by
/// the debiasing path and reports whether the fitted cluster values kept the
/// strict ordering implied by the pattern.
#[derive(Debug, Clone)]
pub struct Fit {
    pub beta: Point,
    pub method: Method,
    pub certificate: Option<DualCertificate>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub cluster_order_ok: Option<bool>,
}

/// Cross-validation output.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CvResult {
    pub lambda_cv: f64,
    pub grid: Vec<f64>,
    pub cv_errors: Vec<f64>,
    pub folds: usize,
    /// Folds dropped because their training design was rank-deficient.
    pub skipped_folds: usize,
}

fn check_model_dims(model: &LinearModel, lam: &TuningVector) -> Result<()> {
    if model.p() != lam.len() {
        return Err(Error::DimensionMismatch { expected: model.p(), got: lam.len() });
    }
    Ok(())
}

fn point_of(v: &DVector<f64>) -> Point {
    Point::from_computed(v.as_slice().to_vec())
}

pub(crate) fn ols_vector(model: &LinearModel) -> Result<DVector<f64>> {
    if let Some(c) = model.ortho_scale() {
        Ok(model.xty() / c)
    } else {
        let chol = model
            .gram()
            .clone()
            .cholesky()
            .ok_or(Error::Singular("X'X is not positive definite"))?;
        Ok(chol.solve(model.xty()))
    }
}

/// `β̂OLS = (X'X)⁻¹X'Y`.
pub fn ols(model: &LinearModel) -> Result<Fit> {
    let beta = ols_vector(model)?;
    let objective = model.half_rss(&beta);
    Ok(Fit {
        beta: point_of(&beta),
        method: Method::Ols,
        certificate: None,
        objective,
        iterations: 0,
        converged: true,
        cluster_order_ok: None,
    })
}

/// SLOPE on an orthogonal design: `β̂ = prox_{J_{Λ/c}}(β̂OLS)` with the
/// certificate `π* = c·(β̂OLS − β̂) ∈ C_Λ`.
pub fn slope_orthogonal(model: &LinearModel, lam: &TuningVector) -> Result<Fit> {
    check_model_dims(model, lam)?;
    let c = model.ortho_scale().ok_or(Error::NotOrthogonal)?;
    let ols_beta = model.xty() / c;
    let scaled = lam.divided_by(c)?;
    let beta = prox_sorted_l1(ols_beta.as_slice(), &scaled)?;
    let small = project_dual_ball(ols_beta.as_slice(), &scaled)?;
    let certificate = DualCertificate {
        pi: Point::from_computed(small.pi.iter().map(|v| v * c).collect()),
        slack: small.slack.iter().map(|s| s * c).collect(),
    };
    let beta_v = DVector::from_column_slice(&beta);
    let objective = model.half_rss(&beta_v) + sorted_l1_norm(&beta, lam)?;
    Ok(Fit {
        beta,
        method: Method::Slope,
        certificate: Some(certificate),
        objective,
        iterations: 0,
        converged: true,
        cluster_order_ok: None,
    })
}

/// SLOPE on an arbitrary design by FISTA; returns the best iterate flagged
/// `converged = false` when the certificate is not reached in `max_iter`.
pub fn slope_general(model: &LinearModel, lam: &TuningVector, max_iter: usize, tol: f64) -> Result<Fit> {
    check_model_dims(model, lam)?;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput("tolerance must be positive and finite"));
    }
    let l = max_eigenvalue(model.gram());
    let sol = fista_gram(model.gram(), model.xty(), lam, l, None, max_iter, tol)?;
    let grad = model.xty() - model.gram() * &sol.beta;
    let certificate = DualCertificate {
        slack: slack_vector(grad.as_slice(), lam),
        pi: point_of(&grad),
    };
    let objective = model.half_rss(&sol.beta) + sorted_l1_norm(sol.beta.as_slice(), lam)?;
    Ok(Fit {
        beta: point_of(&sol.beta),
        method: Method::Slope,
        certificate: Some(certificate),
        objective,
        iterations: sol.iterations,
        converged: sol.converged,
        cluster_order_ok: None,
    })
}

/// LASSO on an orthogonal design: coordinatewise soft threshold of `β̂OLS`
/// at `λ/c`, equal to SLOPE with the constant tuning vector.
pub fn lasso_orthogonal(model: &LinearModel, lambda: f64) -> Result<Fit> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput("lambda must be non-negative and finite"));
    }
    let c = model.ortho_scale().ok_or(Error::NotOrthogonal)?;
    if lambda == 0.0 {
        let beta = model.xty() / c;
        let objective = model.half_rss(&beta);
        return Ok(Fit {
            beta: point_of(&beta),
            method: Method::Lasso,
            certificate: None,
            objective,
            iterations: 0,
            converged: true,
            cluster_order_ok: None,
        });
    }
    let lam = TuningVector::constant(lambda, model.p())?;
    let mut fit = slope_orthogonal(model, &lam)?;
    fit.method = Method::Lasso;
    Ok(fit)
}

/// The default CV grid: `size` log-spaced values spanning
/// `[1e-3, 1]·λ_max` with `λ_max = ‖X'Y‖_∞`.
pub fn default_cv_grid(model: &LinearModel, size: usize) -> Result<Vec<f64>> {
    if size == 0 {
        return Err(Error::InvalidInput("grid size must be at least 1"));
    }
    let lam_max = model.xty().amax();
    if !(lam_max > 0.0) {
        return Err(Error::InvalidInput("X'Y is zero; no data-driven grid exists"));
    }
    if size == 1 {
        return Ok(alloc::vec![lam_max]);
    }
    Ok((0..size)
        .map(|i| lam_max * libm::pow(10.0, -3.0 + 3.0 * i as f64 / (size - 1) as f64))
        .collect())
}

/// K-fold cross-validation for the LASSO penalty level.
///
/// Folds are contiguous blocks of a seed-shuffled row permutation. Fold
/// subsets break orthogonality, so every per-fold fit goes through the
/// general FISTA path (warm-started along the grid, largest λ first).
/// `lambda_cv` minimizes the mean squared prediction error over held-out
/// rows; ties pick the smaller λ.
pub fn lasso_cv(model: &LinearModel, grid: &[f64], folds: usize, seed: u64) -> Result<CvResult> {
    let n = model.n();
    let p = model.p();
    if folds < 2 {
        return Err(Error::InvalidInput("cross-validation needs at least 2 folds"));
    }
    if folds > n {
        return Err(Error::InvalidInput("more folds than observations"));
    }
    if grid.is_empty() {
        return Err(Error::InvalidInput("grid must be nonempty"));
    }
    if grid.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
        return Err(Error::InvalidInput("grid values must be positive and finite"));
    }

    let mut rows: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rows.shuffle(&mut rng);

    // evaluate largest λ first so warm starts move down the path
    let mut by_desc: Vec<usize> = (0..grid.len()).collect();
    by_desc.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]));

    let mut sse = alloc::vec![0.0f64; grid.len()];
    let mut skipped = 0usize;
    let mut held_out = 0usize;

    let base = n / folds;
    let extra = n % folds;
    let mut start = 0usize;
    for f in 0..folds {
        let len = base + usize::from(f < extra);
        let val = &rows[start..start + len];
        start += len;

        if n - val.len() < p {
            skipped += 1;
            continue;
        }
        // Gram downdate: X_tr'X_tr = X'X − Σ_val x_i x_i'
        let mut gram_tr = model.gram().clone();
        let mut xty_tr = model.xty().clone();
        for &i in val {
            let xi = model.x().row(i).transpose();
            gram_tr.syger(-1.0, &xi, &xi, 1.0);
            xty_tr.axpy(-model.y()[i], &xi, 1.0);
        }
        mirror_lower(&mut gram_tr);
        if gram_tr.clone().cholesky().is_none() {
            skipped += 1;
            continue;
        }

        let l = max_eigenvalue(&gram_tr);
        let mut warm = DVector::zeros(p);
        for &gi in &by_desc {
            let lam = TuningVector::constant(grid[gi], p)?;
            let sol = fista_gram(&gram_tr, &xty_tr, &lam, l, Some(&warm), DEFAULT_MAX_ITER, DEFAULT_TOL)?;
            warm = sol.beta;
            for &i in val {
                let pred = model.x().row(i).transpose().dot(&warm);
                let r = model.y()[i] - pred;
                sse[gi] += r * r;
            }
        }
        held_out += val.len();
    }

    if held_out == 0 {
        return Err(Error::Singular("every CV fold had a rank-deficient training design"));
    }
    let cv_errors: Vec<f64> = sse.iter().map(|s| s / held_out as f64).collect();

    // argmin; among ties prefer the smaller λ
    let mut best = 0usize;
    for i in 1..grid.len() {
        let better = cv_errors[i] < cv_errors[best]
            || (cv_errors[i] == cv_errors[best] && grid[i] < grid[best]);
        if better {
            best = i;
        }
    }
    Ok(CvResult {
        lambda_cv: grid[best],
        grid: grid.to_vec(),
        cv_errors,
        folds,
        skipped_folds: skipped,
    })
}

/// OLS refit on the clustered design `X·U`, expanded back to `p`
/// coordinates. The method tag follows the pattern-matrix kind.
pub fn debias_with(model: &LinearModel, u: &PatternMatrix) -> Result<Fit> {
    if u.rows() != model.p() {
        return Err(Error::DimensionMismatch { expected: model.p(), got: u.rows() });
    }
    let k = u.cols();
    let supports: Vec<Vec<(usize, f64)>> = (0..k).map(|j| u.column_support(j)).collect();

    // normal equations on the clustered design via the cached Gram matrix
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut b = DVector::<f64>::zeros(k);
    for j in 0..k {
        for (r, s) in &supports[j] {
            b[j] += s * model.xty()[*r];
        }
        for l in 0..=j {
            let mut acc = 0.0;
            for (r, s) in &supports[j] {
                for (r2, s2) in &supports[l] {
                    acc += s * s2 * model.gram()[(*r, *r2)];
                }
            }
            a[(j, l)] = acc;
            a[(l, j)] = acc;
        }
    }
    let chol = a.cholesky().ok_or(Error::Singular("clustered design is rank-deficient"))?;
    let v = chol.solve(&b);

    let cluster_order_ok = match u.kind() {
        // pattern reproduction needs v₁ > … > v_k > 0
        PatternKind::Slope => {
            v.iter().zip(v.iter().skip(1)).all(|(a, b)| a > b) && v[k - 1] > 0.0
        }
        PatternKind::Lasso => v.iter().all(|x| *x > 0.0),
    };

    let beta = crate::patterns::expand(u, v.as_slice())?;
    let beta_v = DVector::from_column_slice(&beta);
    let objective = model.half_rss(&beta_v);
    Ok(Fit {
        beta,
        method: match u.kind() {
            PatternKind::Slope => Method::SlopeLs,
            PatternKind::Lasso => Method::LassoLs,
        },
        certificate: None,
        objective,
        iterations: 0,
        converged: true,
        cluster_order_ok: Some(cluster_order_ok),
    })
}

/// Debiased SLOPE: OLS on `X·U_M` for a SLOPE pattern `M`.
pub fn debias(model: &LinearModel, m: &PatternVector) -> Result<Fit> {
    if m.len() != model.p() {
        return Err(Error::DimensionMismatch { expected: model.p(), got: m.len() });
    }
    debias_with(model, &pattern_matrix(m)?)
}

/// Debiased LASSO: OLS on `X·U_S` for a sign vector `S`.
pub fn debias_signs(model: &LinearModel, s: &SignVector) -> Result<Fit> {
    if s.len() != model.p() {
        return Err(Error::DimensionMismatch { expected: model.p(), got: s.len() });
    }
    debias_with(model, &lasso_pattern_matrix(s)?)
}

/// Total squared error `‖β − β̂‖²₂`.
pub fn mse(beta_true: &[f64], beta_hat: &[f64]) -> Result<f64> {
    if beta_true.len() != beta_hat.len() {
        return Err(Error::DimensionMismatch { expected: beta_true.len(), got: beta_hat.len() });
    }
    Ok(beta_true.iter().zip(beta_hat).map(|(a, b)| (a - b) * (a - b)).sum())
}

/// Human-readable summary of a fitting failure, for per-method records.
pub fn error_message(e: &Error) -> String {
    alloc::format!("{e}")
}

// ---------------------------------------------------------------------------
// internal FISTA machinery (Gram form)
// ---------------------------------------------------------------------------

pub(crate) struct FistaSolution {
    pub beta: DVector<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest eigenvalue of a PSD matrix by power iteration
/// (relative tolerance 1e-10, cap 10⁴ iterations).
pub(crate) fn max_eigenvalue(gram: &DMatrix<f64>) -> f64 {
    let p = gram.nrows();
    let mut v = DVector::from_element(p, 1.0 / libm::sqrt(p as f64));
    let mut eig = 0.0f64;
    for _ in 0..10_000 {
        let w = gram * &v;
        let norm = w.norm();
        if norm <= f64::MIN_POSITIVE {
            return 0.0;
        }
        let next = v.dot(&w);
        v = w / norm;
        if (next - eig).abs() <= 1e-10 * next.abs().max(1.0) {
            return next;
        }
        eig = next;
    }
    eig
}

/// Accelerated proximal gradient on
/// `½ b'Gb − b'(X'Y) + J_Λ(b)` with step `1/l`, stopping when the dual
/// certificate holds: `X'(Y−Xb) ∈ C_Λ` within `tol·(1+Σλ)` and
/// `|(X'(Y−Xb))'b − J_Λ(b)| ≤ tol·(1+J_Λ(b))`.
pub(crate) fn fista_gram(
    gram: &DMatrix<f64>,
    xty: &DVector<f64>,
    lam: &TuningVector,
    l: f64,
    warm: Option<&DVector<f64>>,
    max_iter: usize,
    tol: f64,
) -> Result<FistaSolution> {
    let p = xty.len();
    if l <= f64::MIN_POSITIVE {
        // zero design: the objective reduces to J_Λ(b) plus a constant
        return Ok(FistaSolution { beta: DVector::zeros(p), iterations: 0, converged: true });
    }
    let step = 1.0 / l;
    let step_lam = lam.scaled(step)?;
    let ball_tol = tol * (1.0 + lam.sum());

    let mut x = warm.cloned().unwrap_or_else(|| DVector::zeros(p));
    let mut y = x.clone();
    let mut t = 1.0f64;

    for iter in 1..=max_iter {
        let grad = gram * &y - xty;
        let forward: Vec<f64> = (0..p).map(|i| y[i] - step * grad[i]).collect();
        let x_new = DVector::from_vec(prox_sorted_l1(&forward, &step_lam)?.into_vec());

        let t_new = 0.5 * (1.0 + libm::sqrt(1.0 + 4.0 * t * t));
        let momentum = (t - 1.0) / t_new;
        y = &x_new + (&x_new - &x) * momentum;
        x = x_new;
        t = t_new;

        let dual = xty - gram * &x;
        if certificate_holds(dual.as_slice(), x.as_slice(), lam, ball_tol, tol)? {
            return Ok(FistaSolution { beta: x, iterations: iter, converged: true });
        }
    }
    Ok(FistaSolution { beta: x, iterations: max_iter, converged: false })
}

fn certificate_holds(dual: &[f64], beta: &[f64], lam: &TuningVector, ball_tol: f64, tol: f64) -> Result<bool> {
    if !in_dual_ball(dual, lam, ball_tol)? {
        return Ok(false);
    }
    let pairing: f64 = dual.iter().zip(beta).map(|(a, b)| a * b).sum();
    let j = sorted_l1_norm(beta, lam)?;
    Ok((pairing - j).abs() <= tol * (1.0 + j))
}

/// Copies the lower triangle onto the upper one (after rank-1 downdates that
/// only maintained one triangle).
fn mirror_lower(m: &mut DMatrix<f64>) {
    let p = m.nrows();
    for i in 0..p {
        for j in 0..i {
            m[(j, i)] = m[(i, j)];
        }
    }
}
