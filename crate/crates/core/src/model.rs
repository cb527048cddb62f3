//! The regression model `Y = Xβ + ε` with orthogonality metadata.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative tolerance of the orthogonality detector.
pub const ORTHO_REL_TOL: f64 = 1e-8;

/// A design/response pair with the Gram matrix `X'X` and `X'Y` cached, and
/// the scale `c` such that `X'X = c·I_p` when the design is orthogonal.
#[derive(Debug, Clone)]
pub struct LinearModel {
    x: DMatrix<f64>,
    y: DVector<f64>,
    gram: DMatrix<f64>,
    xty: DVector<f64>,
    ortho_scale: Option<f64>,
}

impl LinearModel {
    pub fn new(x: DMatrix<f64>, y: DVector<f64>) -> Result<Self> {
        if x.nrows() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.nrows(), got: y.len() });
        }
        if x.ncols() == 0 || x.nrows() == 0 {
            return Err(Error::InvalidInput("design matrix must be non-empty"));
        }
        if x.iter().any(|v| !v.is_finite()) || y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("model entries must be finite"));
        }
        let gram = x.tr_mul(&x);
        let xty = x.tr_mul(&y);
        let ortho_scale = detect_ortho_scale(&gram);
        Ok(LinearModel { x, y, gram, xty, ortho_scale })
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn xty(&self) -> &DVector<f64> {
        &self.xty
    }

    /// `c` with `X'X = c·I_p`, when detected.
    pub fn ortho_scale(&self) -> Option<f64> {
        self.ortho_scale
    }

    /// Residual `Y − Xb`.
    pub(crate) fn residual(&self, beta: &DVector<f64>) -> DVector<f64> {
        &self.y - &self.x * beta
    }

    /// `½‖Y − Xb‖²`.
    pub(crate) fn half_rss(&self, beta: &DVector<f64>) -> f64 {
        self.residual(beta).norm_squared() / 2.0
    }
}

/// `c` = mean of `diag(X'X)`, accepted when both the off-diagonal mass and
/// the diagonal spread stay below `ORTHO_REL_TOL·c`.
pub(crate) fn detect_ortho_scale(gram: &DMatrix<f64>) -> Option<f64> {
    let p = gram.nrows();
    let c = gram.diagonal().sum() / p as f64;
    if !(c > 0.0) {
        return None;
    }
    let tol = ORTHO_REL_TOL * c;
    for i in 0..p {
        if (gram[(i, i)] - c).abs() > tol {
            return None;
        }
        for j in 0..i {
            if gram[(i, j)].abs() > tol {
                return None;
            }
        }
    }
    Some(c)
}
