//! The sorted-ℓ1 norm, its dual norm, the proximal operator and the
//! Euclidean projection onto the dual unit ball.
//!
//! For a tuning vector `Λ = (λ₁ ≥ … ≥ λ_p ≥ 0)` the sorted-ℓ1 norm is
//!
//! ```text
//! J_Λ(b) = Σᵢ λᵢ·|b|₍ᵢ₎,      |b|₍₁₎ ≥ … ≥ |b|₍ₚ₎
//! ```
//!
//! Its dual unit ball is the signed permutahedron
//!
//! ```text
//! C_Λ = { π : Σ_{j≤i} |π|₍ⱼ₎ ≤ Σ_{j≤i} λ_j  for i = 1..p }
//! ```
//!
//! and the two operators are linked by the Moreau decomposition
//! `y = prox_{J_Λ}(y) + proj_{C_Λ}(y)`, which this module satisfies exactly
//! (same arithmetic on both sides).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::tuning::TuningVector;

/// The optimal dual vector `π* = proj_{C_Λ}(y)` together with the
/// partial-sum slacks certifying its membership in `C_Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    /// The projection of the input onto `C_Λ`.
    pub pi: Point,
    /// `slack[i] = Σ_{j≤i} λ_j − Σ_{j≤i} |π|₍ⱼ₎`; membership means every
    /// entry is ≥ −tol.
    pub slack: Vec<f64>,
}

impl DualCertificate {
    /// Largest constraint violation, i.e. `max(0, −min slack)`.
    pub fn max_violation(&self) -> f64 {
        let v = self.slack.iter().fold(0.0f64, |acc, s| acc.max(-s));
        if v == 0.0 {
            0.0
        } else {
            v
        }
    }

    pub fn in_ball(&self, tol: f64) -> bool {
        self.max_violation() <= tol
    }
}

fn check_len(len: usize, lam: &TuningVector) -> Result<()> {
    if len != lam.len() {
        return Err(Error::DimensionMismatch { expected: lam.len(), got: len });
    }
    Ok(())
}

/// Indices of `y` sorted by `|y|` descending; stable, so equal magnitudes
/// keep input order.
pub(crate) fn sort_order_desc_abs(y: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| y[b].abs().total_cmp(&y[a].abs()));
    order
}

/// `J_Λ(b) = Σᵢ λᵢ·|b|₍ᵢ₎`.
pub fn sorted_l1_norm(b: &[f64], lam: &TuningVector) -> Result<f64> {
    check_len(b.len(), lam)?;
    let mut mags: Vec<f64> = b.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    Ok(mags.iter().zip(lam.iter()).map(|(m, l)| m * l).sum())
}

/// The gauge of `C_Λ`: `max_i (Σ_{j≤i} |x|₍ⱼ₎) / (Σ_{j≤i} λ_j)`.
pub fn dual_norm(x: &[f64], lam: &TuningVector) -> Result<f64> {
    check_len(x.len(), lam)?;
    let mut mags: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut sx = 0.0;
    let mut sl = 0.0;
    let mut best = 0.0f64;
    for (m, l) in mags.iter().zip(lam.iter()) {
        sx += m;
        sl += l;
        // λ₁ > 0 guarantees sl > 0 from the first index on
        best = best.max(sx / sl);
    }
    Ok(best)
}

/// Membership in `C_Λ`: all `p` partial-sum inequalities hold within `tol`.
pub fn in_dual_ball(x: &[f64], lam: &TuningVector, tol: f64) -> Result<bool> {
    if tol < 0.0 {
        return Err(Error::InvalidInput("tolerance must be non-negative"));
    }
    check_len(x.len(), lam)?;
    let mut mags: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut sx = 0.0;
    let mut sl = 0.0;
    for (m, l) in mags.iter().zip(lam.iter()) {
        sx += m;
        sl += l;
        if sx > sl + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership tolerance relative to the ball's scale: `1e-12·(1 + Σλ)`.
pub fn default_ball_tol(lam: &TuningVector) -> f64 {
    1e-12 * (1.0 + lam.sum())
}

/// `prox_{J_Λ}(y) = argmin_b ½‖y−b‖² + J_Λ(b)`.
///
/// Sort `|y|` descending, subtract `Λ`, restore non-increasing order by
/// pool-adjacent-violators averaging, clamp at zero, then restore signs and
/// positions. Pooled blocks take the exact arithmetic mean of their entries,
/// so clustered coordinates of the output are bit-for-bit equal.
pub fn prox_sorted_l1(y: &[f64], lam: &TuningVector) -> Result<Point> {
    check_len(y.len(), lam)?;
    let p = y.len();
    let order = sort_order_desc_abs(y);

    // d_i = |y|_(i) − λ_i, then project onto the non-increasing cone.
    // Stack of blocks (sum, count); a strict increase d_i < d_{i+1} forces a
    // merge, cascading left while block means keep violating.
    let mut sums: Vec<f64> = Vec::with_capacity(p);
    let mut counts: Vec<usize> = Vec::with_capacity(p);
    for (rank, &idx) in order.iter().enumerate() {
        sums.push(y[idx].abs() - lam[rank]);
        counts.push(1);
        while sums.len() > 1 {
            let top = sums.len() - 1;
            if sums[top - 1] / counts[top - 1] as f64 >= sums[top] / counts[top] as f64 {
                break;
            }
            let s = sums.pop().unwrap();
            let c = counts.pop().unwrap();
            sums[top - 1] += s;
            counts[top - 1] += c;
        }
    }

    let mut out = alloc::vec![0.0; p];
    let mut rank = 0usize;
    for (s, c) in sums.iter().zip(counts.iter()) {
        let mean = s / *c as f64;
        let value = if mean > 0.0 { mean } else { 0.0 };
        for _ in 0..*c {
            let idx = order[rank];
            out[idx] = value * sign(y[idx]);
            rank += 1;
        }
    }
    Ok(Point::from_computed(out))
}

/// Euclidean projection onto `C_Λ` via the Moreau identity
/// `proj_{C_Λ}(y) = y − prox_{J_Λ}(y)` (computed with the same arithmetic).
pub fn project_dual_ball(y: &[f64], lam: &TuningVector) -> Result<DualCertificate> {
    let prox = prox_sorted_l1(y, lam)?;
    let pi: Vec<f64> = y.iter().zip(prox.iter()).map(|(a, b)| a - b).collect();
    let slack = slack_vector(&pi, lam);
    Ok(DualCertificate { pi: Point::from_computed(pi), slack })
}

/// `slack[i] = Σ_{j≤i} λ_j − Σ_{j≤i} |v|₍ⱼ₎` for `i = 1..p`.
pub(crate) fn slack_vector(v: &[f64], lam: &TuningVector) -> Vec<f64> {
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    mags.iter()
        .zip(lam.partial_sums())
        .map(|(m, sl)| {
            acc += m;
            sl - acc
        })
        .collect()
}

/// Sign with the `sign(0) = 0` convention.
pub(crate) fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}
