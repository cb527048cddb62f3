//! Finite real vectors (candidate coefficients, OLS estimates, dual points).

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A vector in `R^p` with finite entries.
///
/// Wraps the raw storage so that every value entering the kernels has been
/// checked once; all operations may then assume finiteness.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<f64>", into = "Vec<f64>"))]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("point entries must be finite"));
        }
        Ok(Point(values))
    }

    pub fn zeros(p: usize) -> Self {
        Point(alloc::vec![0.0; p])
    }

    /// Internal constructor for values produced by the kernels themselves.
    pub(crate) fn from_computed(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Point(values)
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

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl core::ops::Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Point::new(values)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(Point::new(alloc::vec![1.0, f64::NAN]).is_err());
        assert!(Point::new(alloc::vec![f64::INFINITY]).is_err());
        assert!(Point::new(alloc::vec![1.0, -2.5]).is_ok());
    }
}
