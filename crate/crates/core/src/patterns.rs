//! Model patterns and the pattern-matrix algebra used for debiasing.
//!
//! The pattern of `b ∈ R^p` is the integer vector `mᵢ = sign(bᵢ)·rank(|bᵢ|)`
//! where ranks run `1..k` over the distinct nonzero magnitudes, ascending
//! (rank 1 is the smallest nonzero magnitude). It encodes support, signs,
//! clusters and the magnitude hierarchy, e.g.
//! `patt(4, 0, −1.5, 1.5, −4) = (2, 0, −1, 1, −2)`.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::sorted_l1::sign;

/// Default relative tie tolerance for pattern extraction. Prox outputs carry
/// exact ties (pooled blocks share one mean), so extraction on them also
/// works at `tie_tol = 0`.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// The integer pattern `m` with its cluster bookkeeping:
/// `k = max|mᵢ|` clusters, `cluster_sizes[j] = #{i : |mᵢ| = k−j}` (so entry 0
/// counts the largest-magnitude cluster) and `cluster_bounds` their running
/// sums `P_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternVector {
    entries: Vec<i32>,
    k: usize,
    cluster_sizes: Vec<usize>,
    cluster_bounds: Vec<usize>,
}

impl PatternVector {
    /// Builds a pattern from raw entries, rejecting vectors whose nonzero
    /// ranks do not cover `1..max|mᵢ|`.
    pub fn from_entries(entries: Vec<i32>) -> Result<Self> {
        if !validate_entries(&entries) {
            return Err(Error::InvalidInput("pattern ranks must cover 1..max|m_i|"));
        }
        Ok(Self::from_valid_entries(entries))
    }

    fn from_valid_entries(entries: Vec<i32>) -> Self {
        let k = entries.iter().map(|m| m.unsigned_abs() as usize).max().unwrap_or(0);
        let mut cluster_sizes = alloc::vec![0usize; k];
        for m in &entries {
            if *m != 0 {
                // column j of U_M holds rank k−j (0-based)
                cluster_sizes[k - m.unsigned_abs() as usize] += 1;
            }
        }
        let mut acc = 0;
        let cluster_bounds = cluster_sizes
            .iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect();
        PatternVector { entries, k, cluster_sizes, cluster_bounds }
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero clusters, `‖m‖_∞`.
    pub fn num_clusters(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0
    }

    /// Sizes `p_j`, largest-magnitude cluster first.
    pub fn cluster_sizes(&self) -> &[usize] {
        &self.cluster_sizes
    }

    /// Cumulative sums `P_j` of the cluster sizes.
    pub fn cluster_bounds(&self) -> &[usize] {
        &self.cluster_bounds
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.cluster_bounds.last().copied().unwrap_or(0)
    }

    /// Sign vector of the entries.
    pub fn signs(&self) -> SignVector {
        SignVector(self.entries.iter().map(|m| m.signum() as i8).collect())
    }
}

/// True iff every rank `1..max|mᵢ|` is attained by some entry.
pub fn validate_entries(entries: &[i32]) -> bool {
    let k = entries.iter().map(|m| m.unsigned_abs() as usize).max().unwrap_or(0);
    let mut seen = alloc::vec![false; k + 1];
    for m in entries {
        seen[m.unsigned_abs() as usize] = true;
    }
    seen.iter().skip(1).all(|s| *s)
}

/// Structural validity of a pattern (always true for [`pattern_of`] outputs).
pub fn validate_pattern(m: &PatternVector) -> bool {
    validate_entries(m.entries())
}

/// Extracts `patt(b)` with magnitudes within `tie_tol·(1 + max|b|)` of each
/// other (chained along the sorted order) sharing a rank, and magnitudes at
/// most that threshold mapping to zero.
pub fn pattern_of(b: &[f64], tie_tol: f64) -> PatternVector {
    let p = b.len();
    let max_abs = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tol = tie_tol * (1.0 + max_abs);

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| b[i].abs().total_cmp(&b[j].abs()));

    // ascending walk: new cluster whenever the gap to the previous magnitude
    // exceeds tol; leading near-zero magnitudes take rank 0
    let mut ranks = alloc::vec![0i32; p];
    let mut rank = 0i32;
    let mut prev = f64::NEG_INFINITY;
    for &i in &order {
        let mag = b[i].abs();
        if mag <= tol {
            prev = mag;
            continue;
        }
        if mag - prev > tol || rank == 0 {
            rank += 1;
        }
        ranks[i] = rank;
        prev = mag;
    }

    let entries = (0..p).map(|i| ranks[i] * sign(b[i]) as i32).collect();
    PatternVector::from_valid_entries(entries)
}

/// Entrywise equality with a length check.
pub fn pattern_equal(a: &PatternVector, b: &PatternVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.entries == b.entries)
}

/// A sign vector `S ∈ {−1, 0, +1}^p` (the LASSO model pattern).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|s| !(-1..=1).contains(s)) {
            return Err(Error::InvalidInput("sign entries must be -1, 0 or +1"));
        }
        Ok(SignVector(entries))
    }

    /// Signs of a real vector with the `sign(0) = 0` convention.
    pub fn of(b: &[f64]) -> Self {
        SignVector(b.iter().map(|v| sign(*v) as i8).collect())
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero entries, `‖S‖₁`.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|s| **s != 0).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Slope,
    Lasso,
}

/// A signed 0/±1 matrix `U ∈ R^{p×k}` mapping cluster values to coordinates.
///
/// For the SLOPE kind, `Uᵢⱼ = sign(mᵢ)·1[|mᵢ| = k+1−j]` (column 1 is the
/// largest cluster); each row holds at most one nonzero. For the LASSO kind
/// the columns are the signed unit vectors of the support, in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatrix {
    data: Vec<i8>, // row-major p×k
    rows: usize,
    cols: usize,
    kind: PatternKind,
}

impl PatternMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols + j]
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) as f64)
    }

    /// Nonzero entries of column `j` as `(row, sign)` pairs.
    pub fn column_support(&self, j: usize) -> Vec<(usize, f64)> {
        (0..self.rows)
            .filter_map(|i| {
                let s = self.get(i, j);
                (s != 0).then_some((i, s as f64))
            })
            .collect()
    }
}

/// The pattern matrix `U_M` of a nonzero SLOPE pattern.
pub fn pattern_matrix(m: &PatternVector) -> Result<PatternMatrix> {
    if m.is_zero() {
        return Err(Error::ZeroPattern);
    }
    let p = m.len();
    let k = m.num_clusters();
    let mut data = alloc::vec![0i8; p * k];
    for (i, &mi) in m.entries().iter().enumerate() {
        if mi != 0 {
            let j = k - mi.unsigned_abs() as usize; // |m_i| = k+1-(j+1)
            data[i * k + j] = mi.signum() as i8;
        }
    }
    Ok(PatternMatrix { data, rows: p, cols: k, kind: PatternKind::Slope })
}

/// The LASSO pattern matrix `U_S = diag(S)` restricted to the support
/// columns.
pub fn lasso_pattern_matrix(s: &SignVector) -> Result<PatternMatrix> {
    let k = s.support_size();
    if k == 0 {
        return Err(Error::ZeroPattern);
    }
    let p = s.len();
    let mut data = alloc::vec![0i8; p * k];
    let mut j = 0;
    for (i, &si) in s.entries().iter().enumerate() {
        if si != 0 {
            data[i * k + j] = si;
            j += 1;
        }
    }
    Ok(PatternMatrix { data, rows: p, cols: k, kind: PatternKind::Lasso })
}

/// The clustered design `X·U_M` (columns of `X` summed with signs within
/// each cluster).
pub fn clustered_design(x: &DMatrix<f64>, m: &PatternVector) -> Result<DMatrix<f64>> {
    if x.ncols() != m.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), got: x.ncols() });
    }
    let u = pattern_matrix(m)?;
    Ok(apply_to_columns(x, &u))
}

/// `X·U` exploiting the at-most-one-nonzero-per-row structure of `U`.
pub(crate) fn apply_to_columns(x: &DMatrix<f64>, u: &PatternMatrix) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(x.nrows(), u.cols());
    for j in 0..u.cols() {
        for (col, s) in u.column_support(j) {
            let mut out_j = out.column_mut(j);
            out_j.axpy(s, &x.column(col), 1.0);
        }
    }
    out
}

/// `U·reduced`: maps `k` cluster values back to `p` coordinates.
pub fn expand(u: &PatternMatrix, reduced: &[f64]) -> Result<Point> {
    if u.cols() != reduced.len() {
        return Err(Error::DimensionMismatch { expected: u.cols(), got: reduced.len() });
    }
    let mut out = alloc::vec![0.0; u.rows()];
    for j in 0..u.cols() {
        for (i, s) in u.column_support(j) {
            out[i] += s * reduced[j];
        }
    }
    Point::new(out)
}
