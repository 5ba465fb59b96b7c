//! Pseudospectra of dense complex matrices and of infinite block-diagonal
//! operator families, with studies of level-set convergence, resolvent-norm
//! lower bounds, constant-norm regions and resolvent decay.
//!
//! ```
//! use pseudolab::{named_example, resolvent_norm, Complex64};
//!
//! let t = named_example("shargorodsky").unwrap().model;
//! let v = resolvent_norm(&t, Complex64::new(0.1, 0.2));
//! assert!((v.value - 1.0).abs() < 1e-9);
//! ```

// NaN must fail these checks, and index loops mirror the textbook kernels
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod experiments;
pub mod numkernel;
pub mod operators;
pub mod pseudospectra;
pub mod resolvent;
pub mod setgeom;

pub use num_complex::Complex64;

pub use experiments::{ExperimentError, StudyReport, Verdict, STUDY_NAMES};
pub use numkernel::{ComplexMatrix, KernelError};
pub use operators::{
    build_named_example, named_example, DiagBlockFamily, ExampleParams, OperatorError, OperatorModel,
    OperatorSequence, EXAMPLE_NAMES,
};
pub use pseudospectra::{compute_norm_field, level_set, GridError, GridRegion, LevelSetMask, NormField, Strictness};
pub use resolvent::{resolvent_norm, resolvent_power_norm, ResolventError, ResolventValue};
pub use setgeom::{hausdorff_distance, GeomError, MaskSet};

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}
