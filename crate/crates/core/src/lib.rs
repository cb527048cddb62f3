//! Sorted-ℓ1 (SLOPE) estimation kernels for orthogonal designs.
//!
//! The crate is organized around the exact closed-form machinery available
//! when `X'X = c·I`:
//!
//! - [`sorted_l1`] — the sorted-ℓ1 norm `J_Λ`, its dual norm, the proximal
//!   operator (sort + pool-adjacent-violators) and the Euclidean projection
//!   onto the dual-norm unit ball (a signed permutahedron).
//! - [`patterns`] — the integer model pattern `sign(bᵢ)·rank(|bᵢ|)` encoding
//!   support, signs and clusters, plus the pattern-matrix algebra used for
//!   debiasing.
//! - [`estimators`] — OLS, SLOPE (orthogonal fast path and a FISTA-based
//!   general path), LASSO, K-fold cross-validation and least-squares
//!   debiasing on clustered designs.
//! - [`theory`] — executable finite-sample cluster/support conditions and
//!   asymptotic tuning-schedule diagnostics.
//! - [`sim`] — the trigonometric-design signal-denoising experiment and
//!   pattern-recovery curves, with deterministic per-replication RNG streams.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `slope-cli` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod estimators;
pub mod model;
pub mod patterns;
pub mod point;
pub mod sim;
pub mod sorted_l1;
pub mod theory;
pub mod tuning;

pub use error::{Error, Result};
pub use estimators::{debias, debias_signs, lasso_cv, lasso_orthogonal, mse, ols, slope_general, slope_orthogonal, CvResult, Fit, Method};
pub use model::LinearModel;
pub use patterns::{pattern_equal, pattern_of, PatternKind, PatternMatrix, PatternVector, SignVector};
pub use point::Point;
pub use sorted_l1::{dual_norm, in_dual_ball, prox_sorted_l1, project_dual_ball, sorted_l1_norm, DualCertificate};
pub use tuning::TuningVector;
