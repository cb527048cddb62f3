//! Error type shared by all kernels.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two inputs that must share a length do not.
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A tuning vector violating non-increasing / positivity constraints.
    #[error("invalid tuning vector: {0}")]
    InvalidTuning(&'static str),
    /// Any other argument violating a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    /// A fast path requiring `X'X = c·I` was called on a general design.
    #[error("design is not orthogonal (X'X != c*I); use the general solver")]
    NotOrthogonal,
    /// A linear solve hit a singular or indefinite system.
    #[error("singular system: {0}")]
    Singular(&'static str),
    /// The all-zero pattern has no pattern matrix (k = 0).
    #[error("all-zero pattern: no nonzero cluster to build a matrix from")]
    ZeroPattern,
}

pub type Result<T> = core::result::Result<T, Error>;
