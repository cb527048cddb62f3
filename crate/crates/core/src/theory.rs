//! Executable finite-sample conditions and tuning-schedule diagnostics.
//!
//! The cluster condition: with `|β̂OLS|` sorted descending, a gap
//! `|β̂OLS|₍ᵢ₎ − |β̂OLS|₍ᵢ₊₁₎ ≤ (λᵢ − λᵢ₊₁)/c` forces the SLOPE magnitudes at
//! those sorted positions to coincide (sufficient, not necessary).
//!
//! The support conditions (for a declared relevant set occupying the leading
//! `p0` coordinates) are necessary and sufficient for
//! `supp(β̂SLOPE) = {1..p0}`:
//!
//! - (a) `min_{i≤p0} |β̂OLSᵢ| > max_{i>p0} |β̂OLSᵢ|`
//! - (b) `Σ_{i=k}^{p0} |β̂OLS|₍ᵢ₎ > (1/c)·Σ_{i=k}^{p0} λᵢ` for `k = 1..p0`
//! - (c) `Σ_{i=p0+1}^{k} |β̂OLS|₍ᵢ₎ ≤ (1/c)·Σ_{i=p0+1}^{k} λᵢ` for `k > p0`
//!
//! Ties at the strict boundaries of (a) and (b) classify as "condition
//! fails" with zero margin.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sorted_l1::sort_order_desc_abs;
use crate::tuning::TuningVector;

/// Adjacent sorted-position pairs flagged by the cluster gap condition,
/// together with the descending-|β̂OLS| permutation they refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterConditionReport {
    /// 0-based pairs `(i, i+1)` of sorted positions.
    pub pairs: Vec<(usize, usize)>,
    /// `sort_order[i]` = original index of the i-th largest magnitude.
    pub sort_order: Vec<usize>,
}

/// Flags every adjacent sorted pair whose magnitude gap is at most the
/// penalty gap `(λᵢ − λᵢ₊₁)/c`.
///
/// The comparison is evaluated as `|β̂|₍ᵢ₎ − λᵢ/c ≤ |β̂|₍ᵢ₊₁₎ − λᵢ₊₁/c`, the
/// same arithmetic the prox uses to decide pooling, so a flagged pair can
/// never disagree with the prox output at the representable-number level.
pub fn cluster_condition(ols_beta: &[f64], lam: &TuningVector, c: f64) -> Result<ClusterConditionReport> {
    if ols_beta.len() != lam.len() {
        return Err(Error::DimensionMismatch { expected: lam.len(), got: ols_beta.len() });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidInput("scale c must be positive and finite"));
    }
    let sort_order = sort_order_desc_abs(ols_beta);
    let shifted: Vec<f64> = sort_order
        .iter()
        .enumerate()
        .map(|(rank, &idx)| ols_beta[idx].abs() - lam[rank] / c)
        .collect();
    let pairs = shifted
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| (w[0] <= w[1]).then_some((i, i + 1)))
        .collect();
    Ok(ClusterConditionReport { pairs, sort_order })
}

/// Outcome of the three support conditions. Margins are worst-case slacks:
/// positive means the condition holds strictly, zero sits on the boundary.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SupportConditionReport {
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub all: bool,
    pub margin_a: f64,
    pub margin_b: f64,
    pub margin_c: f64,
}

/// Evaluates the support conditions for the declared relevant set
/// `{1..p0}` (use [`permute_support_leading`] to arrange an arbitrary
/// support first).
pub fn support_conditions(ols_beta: &[f64], lam: &TuningVector, c: f64, p0: usize) -> Result<SupportConditionReport> {
    let p = ols_beta.len();
    if p != lam.len() {
        return Err(Error::DimensionMismatch { expected: lam.len(), got: p });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidInput("scale c must be positive and finite"));
    }
    if p0 > p {
        return Err(Error::InvalidInput("p0 exceeds the dimension"));
    }

    let mut sorted_abs: Vec<f64> = ols_beta.iter().map(|v| v.abs()).collect();
    sorted_abs.sort_by(|a, b| b.total_cmp(a));

    // (a) declared coordinates strictly dominate the rest
    let (cond_a, margin_a) = if p0 == 0 || p0 == p {
        (true, f64::INFINITY)
    } else {
        let min_lead = ols_beta[..p0].iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        let max_tail = ols_beta[p0..].iter().map(|v| v.abs()).fold(0.0f64, f64::max);
        (min_lead > max_tail, min_lead - max_tail)
    };

    // (b) suffix sums over the declared block beat the penalty
    let mut cond_b = true;
    let mut margin_b = f64::INFINITY;
    for k in (0..p0).rev() {
        // suffix k..p0 accumulated from the right
        let lhs: f64 = sorted_abs[k..p0].iter().sum();
        let rhs: f64 = lam[k..p0].iter().sum::<f64>() / c;
        let slack = lhs - rhs;
        margin_b = margin_b.min(slack);
        if slack <= 0.0 {
            cond_b = false;
        }
    }

    // (c) prefix sums past the declared block stay inside the penalty
    let mut cond_c = true;
    let mut margin_c = f64::INFINITY;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for k in p0..p {
        lhs += sorted_abs[k];
        rhs += lam[k] / c;
        let slack = rhs - lhs;
        margin_c = margin_c.min(slack);
        if slack < 0.0 {
            cond_c = false;
        }
    }

    let all = cond_a && cond_b && cond_c;
    Ok(SupportConditionReport { cond_a, cond_b, cond_c, all, margin_a, margin_b, margin_c })
}

/// Permutes `b` so the given support coordinates come first (in the given
/// order); returns the permuted vector and the permutation applied.
pub fn permute_support_leading(b: &[f64], support: &[usize]) -> Result<(Vec<f64>, Vec<usize>)> {
    let p = b.len();
    let mut taken = alloc::vec![false; p];
    for &i in support {
        if i >= p {
            return Err(Error::InvalidInput("support index out of range"));
        }
        if taken[i] {
            return Err(Error::InvalidInput("support index repeated"));
        }
        taken[i] = true;
    }
    let mut perm: Vec<usize> = support.to_vec();
    perm.extend((0..p).filter(|i| !taken[*i]));
    let permuted = perm.iter().map(|&i| b[i]).collect();
    Ok((permuted, perm))
}

/// Families of tuning sequences `Λ⁽ⁿ⁾` indexed by the sample size.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum ScheduleKind {
    /// `λᵢ⁽ⁿ⁾ = (p+1−i)·n^{2/3}`; satisfies both pattern-recovery
    /// hypotheses (`λ₁/n → 0` and growing gap ratio).
    ArithmeticN23,
    /// `λᵢ = factor·(p+1−i)`, independent of n.
    ScaledArithmetic { factor: f64 },
    /// `λᵢ⁽ⁿ⁾ = ratio·n·(p+1−i)/p`, so `λ₁⁽ⁿ⁾/n ≡ ratio` (the
    /// non-consistent regime when ratio > 0 stays fixed).
    ConstantRatio { ratio: f64 },
    /// A fixed tuning vector reused for every n.
    Fixed { lambda: TuningVector },
}

/// A schedule `n ↦ Λ⁽ⁿ⁾` plus the `δ > 0` used by the gap-ratio
/// diagnostics.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TuningSchedule {
    pub kind: ScheduleKind,
    pub p: usize,
    #[cfg_attr(feature = "serde", serde(default = "default_delta"))]
    pub delta: f64,
}

#[cfg(feature = "serde")]
fn default_delta() -> f64 {
    DEFAULT_DELTA
}

/// Default δ for diagnostics; any positive value is admissible.
pub const DEFAULT_DELTA: f64 = 0.1;

impl TuningSchedule {
    pub fn arithmetic_n23(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("schedule needs p >= 1"));
        }
        Ok(TuningSchedule { kind: ScheduleKind::ArithmeticN23, p, delta: DEFAULT_DELTA })
    }

    pub fn scaled_arithmetic(p: usize, factor: f64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("schedule needs p >= 1"));
        }
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidInput("arithmetic factor must be positive"));
        }
        Ok(TuningSchedule { kind: ScheduleKind::ScaledArithmetic { factor }, p, delta: DEFAULT_DELTA })
    }

    pub fn constant_ratio(p: usize, ratio: f64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("schedule needs p >= 1"));
        }
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::InvalidInput("ratio must be positive"));
        }
        Ok(TuningSchedule { kind: ScheduleKind::ConstantRatio { ratio }, p, delta: DEFAULT_DELTA })
    }

    pub fn fixed(lambda: TuningVector) -> Self {
        let p = lambda.len();
        TuningSchedule { kind: ScheduleKind::Fixed { lambda }, p, delta: DEFAULT_DELTA }
    }

    /// The tuning vector at sample size `n`.
    pub fn tuning_for(&self, n: usize) -> Result<TuningVector> {
        if n == 0 {
            return Err(Error::InvalidInput("sample size must be positive"));
        }
        match &self.kind {
            ScheduleKind::ArithmeticN23 => {
                let scale = libm::cbrt((n * n) as f64);
                TuningVector::arithmetic(scale, 0.0, self.p)
            }
            ScheduleKind::ScaledArithmetic { factor } => TuningVector::arithmetic(*factor, 0.0, self.p),
            ScheduleKind::ConstantRatio { ratio } => {
                TuningVector::arithmetic(ratio * n as f64 / self.p as f64, 0.0, self.p)
            }
            ScheduleKind::Fixed { lambda } => Ok(lambda.clone()),
        }
    }
}

/// Direction of a diagnostic trajectory across the n grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Trend {
    Decreasing,
    Constant,
    Increasing,
    Mixed,
}

fn trend_of(values: &[f64]) -> Trend {
    let rel = 1e-12 * values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut up = false;
    let mut down = false;
    for w in values.windows(2) {
        if w[1] - w[0] > rel {
            up = true;
        } else if w[0] - w[1] > rel {
            down = true;
        }
    }
    match (up, down) {
        (false, false) => Trend::Constant,
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (true, true) => Trend::Mixed,
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScheduleDiagRow {
    pub n: usize,
    /// `λ₁⁽ⁿ⁾/n`; must tend to 0 for strong consistency.
    pub lambda1_over_n: f64,
    /// `min_i (λᵢ⁽ⁿ⁾ − λᵢ₊₁⁽ⁿ⁾) / (√n·(log n)^{1/2+δ})`; must stay bounded
    /// away from 0 for pattern recovery. `+∞` when p = 1 (no gaps).
    pub min_gap_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScheduleDiagnostics {
    pub rows: Vec<ScheduleDiagRow>,
    pub lambda1_trend: Trend,
    pub gap_ratio_trend: Trend,
    /// `λ₁⁽ⁿ⁾/n` decreasing across the grid (consistency-condition trend).
    pub consistency_ok: bool,
    /// Gap ratios positive and non-decreasing across the grid
    /// (pattern-recovery growth condition trend).
    pub gap_condition_ok: bool,
}

/// Tabulates the two limit ratios over `n_list` and flags their trends.
pub fn schedule_diagnostics(schedule: &TuningSchedule, n_list: &[usize]) -> Result<ScheduleDiagnostics> {
    if n_list.is_empty() {
        return Err(Error::InvalidInput("n_list must be nonempty"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("n_list must be strictly increasing"));
    }
    let delta = schedule.delta;
    if !(delta > 0.0) {
        return Err(Error::InvalidInput("delta must be positive"));
    }

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let lam = schedule.tuning_for(n)?;
        let nf = n as f64;
        let denom = libm::sqrt(nf) * libm::pow(libm::log(nf.max(2.0)), 0.5 + delta);
        let min_gap = lam
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min);
        rows.push(ScheduleDiagRow {
            n,
            lambda1_over_n: lam[0] / nf,
            min_gap_ratio: if lam.len() == 1 { f64::INFINITY } else { min_gap / denom },
        });
    }

    let l1: Vec<f64> = rows.iter().map(|r| r.lambda1_over_n).collect();
    let gaps: Vec<f64> = rows.iter().map(|r| r.min_gap_ratio).collect();
    let lambda1_trend = trend_of(&l1);
    let gap_ratio_trend = trend_of(&gaps);
    let consistency_ok = lambda1_trend == Trend::Decreasing;
    let gap_condition_ok = gaps.iter().all(|g| *g > 0.0)
        && matches!(gap_ratio_trend, Trend::Increasing | Trend::Constant);
    Ok(ScheduleDiagnostics { rows, lambda1_trend, gap_ratio_trend, consistency_ok, gap_condition_ok })
}
