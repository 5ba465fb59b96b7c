//! Dense complex linear algebra: LU with partial pivoting, extreme singular
//! values by inverse/power iteration, a closed form for 2x2 blocks and a
//! one-sided Jacobi SVD used as fallback.
//!
//! Square matrices are first split into the diagonal blocks they decouple
//! into under a symmetric permutation; singular values and solves are then
//! computed blockwise. Block-diagonal truncations therefore cost the sum of
//! their block costs.

mod components;
mod lu;
mod matrix;
mod svd;

use thiserror::Error;

pub use components::decoupled_components;
pub use lu::{solve_factored, LuFactors, PIVOT_FLOOR};
pub use matrix::ComplexMatrix;
pub use svd::{
    jacobi_singular_values, largest_singular_value, power_iterate, smallest_singular_value, sv2x2,
    PowerOutcome, SingularExtremes, JACOBI_FALLBACK_DIM, MAX_ITERATIONS, STAGNATION_TOL,
};

pub(crate) use svd::sv2x2_entries;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular at working precision (pivot step {step})")]
    Singular { step: usize },
}
