//! Reproducible studies over the library: convergence of level sets along
//! operator sequences and the two counterexamples, lower-bound and
//! constant-norm scans, resolvent decay along a ray, and growth of
//! truncation norms for a family with empty resolvent set.
//!
//! Every study returns a [`StudyReport`] with its parameters, a main series,
//! a verdict and the tolerances the verdict depends on.

mod constnorm;
mod convergence;
mod decay;
mod empty;
mod report;

use thiserror::Error;

use crate::operators::OperatorError;
use crate::pseudospectra::GridError;
use crate::resolvent::ResolventError;
use crate::setgeom::{hausdorff_distance, GeomError, MaskSet};

pub use constnorm::{
    constant_region_scan, counterexample_const_study, global_min_scan, in_declared_constant_region,
    CONSTANT_DISC_RADIUS, LOWER_BOUND_SLACK,
};
pub use convergence::{convergence_study, convergence_study_with, counterexample_k_study, GNR_THRESHOLD};
pub use decay::{
    decay_study, decay_weight, golden_section_max, log_spaced, loglog_slope, DENSE_ALPHA_GRID, EXPONENT_TOL,
    STABILIZATION_TOL,
};
pub use empty::{empty_resolvent_probe, weyl_lower_bound, BOUND_SLACK, GROWTH_FACTOR};
pub use report::{Budget, StudyReport, Verdict};

pub const STUDY_NAMES: [&str; 7] = [
    "convergence",
    "counterexample-k",
    "counterexample-const",
    "global-min",
    "constant-region",
    "decay",
    "empty-resolvent",
];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
}

/// Hausdorff distance with the empty-set cases filled in: two empty masks
/// are at distance 0, one empty mask is infinitely far from the other.
pub fn mask_distance(a: &MaskSet, b: &MaskSet) -> Result<f64, ExperimentError> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Ok(0.0),
        (true, false) | (false, true) => Ok(f64::INFINITY),
        _ => Ok(hausdorff_distance(a, b)?),
    }
}
