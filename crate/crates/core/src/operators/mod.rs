//! Operator models: dense matrices, infinite block-diagonal families built
//! from an eigenvalue rule `alpha_k` and a symbol `f`, scaled operators, and
//! the sequences `{T_k}` used in convergence studies.

mod family;
mod model;
mod named;
mod sequence;
mod symbol;

use thiserror::Error;

use crate::numkernel::KernelError;

pub use family::{
    assemble_truncation, check_tail_deficit_condition, first_deficit_violation, AlphaRule, BlockShape, DiagBlockFamily,
    VALIDATION_INDEX,
};
pub use model::{block_eigenvalues, scale_operator, OperatorModel};
pub use named::{build_named_example, named_example, ExampleParams, NamedExample, DEFAULT_REFERENCE_N, EXAMPLE_NAMES};
pub use sequence::{Direction, OperatorSequence, SequenceKind};
pub use symbol::{DeficitBound, SymbolSpec};

pub(crate) use family::four_block;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
