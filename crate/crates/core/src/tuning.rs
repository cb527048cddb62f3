//! The non-increasing penalty sequence `Λ = (λ₁ ≥ … ≥ λ_p ≥ 0, λ₁ > 0)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A validated SLOPE tuning vector.
///
/// Construction is strict (`NaN`, negative entries, increasing pairs and
/// `λ₁ = 0` are rejected) so every downstream operation can assume validity.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<f64>", into = "Vec<f64>"))]
pub struct TuningVector(Vec<f64>);

impl TuningVector {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidTuning("length must be at least 1"));
        }
        if lambda.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTuning("entries must be finite"));
        }
        if lambda.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidTuning("entries must be non-negative"));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTuning("entries must be non-increasing"));
        }
        if lambda[0] <= 0.0 {
            return Err(Error::InvalidTuning("leading entry must be positive"));
        }
        Ok(TuningVector(lambda))
    }

    /// Constant sequence `λᵢ = lambda` (the LASSO specialization).
    pub fn constant(lambda: f64, p: usize) -> Result<Self> {
        TuningVector::new(alloc::vec![lambda; p])
    }

    /// Arithmetic sequence `λᵢ = slope·(p+1−i) + offset`.
    pub fn arithmetic(slope: f64, offset: f64, p: usize) -> Result<Self> {
        let lambda = (1..=p).map(|i| slope * (p + 1 - i) as f64 + offset).collect();
        TuningVector::new(lambda)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `s·Λ` for `s > 0`; rescaling preserves every invariant.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidTuning("scale factor must be positive and finite"));
        }
        Ok(TuningVector(self.0.iter().map(|v| v * s).collect()))
    }

    /// `Λ/c` for `c > 0`, entrywise division (kept distinct from
    /// [`TuningVector::scaled`] so checks written in terms of `λᵢ/c` use the
    /// same rounding as the operators they certify).
    pub fn divided_by(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidTuning("divisor must be positive and finite"));
        }
        Ok(TuningVector(self.0.iter().map(|v| v / c).collect()))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Partial sums `Σ_{j≤i} λ_j` for `i = 1..p`.
    pub(crate) fn partial_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.0
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect()
    }
}

impl core::ops::Deref for TuningVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for TuningVector {
    type Error = Error;

    fn try_from(lambda: Vec<f64>) -> Result<Self> {
        TuningVector::new(lambda)
    }
}

impl From<TuningVector> for Vec<f64> {
    fn from(t: TuningVector) -> Vec<f64> {
        t.0
    }
}
