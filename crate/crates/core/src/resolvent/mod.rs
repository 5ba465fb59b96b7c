//! Resolvent norms `||(T - z)^-1||` and resolvent-power norms
//! `||(T - z)^(-2^n)||^(1/2^n)` for dense, block-family and scaled models,
//! plus generalised norm resolvent defects, boundedness probes and checks of
//! two resolvent expansion identities.
//!
//! Points of the spectrum get the value `f64::INFINITY`.

mod blocks;
mod dense;
mod identities;
mod sequences;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkernel::{jacobi_singular_values, sv2x2, ComplexMatrix, KernelError};
use crate::operators::{OperatorError, OperatorModel};

pub use blocks::{
    block2_value, block4_value, family_sup, TailMethod, TailOptions, TailReport, SAMPLED_EXACT_BLOCKS, TAIL_CAP,
    TAIL_TOL,
};
pub use dense::{dense_power_norm, dense_resolvent_norm};
pub use identities::{expansion_residual, power_diff_bound_check, PowerDiffBound};
pub use sequences::{boundedness_probe, gnr_defect, BoundednessProbe, GnrDefect, RESOLVENT_FLOOR};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResolventError {
    #[error("{operator} is singular at {z} (sigma_min = {sigma_min:e})")]
    Singular { operator: String, z: Complex64, sigma_min: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    DenseExact,
    BlockExactWithTail,
    Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventValue {
    /// Norm value; infinite on the spectrum.
    pub value: f64,
    pub mode: EvalMode,
    /// Block-family diagnostics, also carried through scaling.
    pub tail: Option<TailReport>,
}

impl ResolventValue {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// `||(T - z)^-1||`.
pub fn resolvent_norm(model: &OperatorModel, z: Complex64) -> ResolventValue {
    resolvent_power_norm_with(model, z, 0, TailOptions::default())
}

/// `||(T - z)^(-2^n)||^(1/2^n)`; `n = 0` is the plain resolvent norm.
pub fn resolvent_power_norm(model: &OperatorModel, z: Complex64, n: u32) -> ResolventValue {
    resolvent_power_norm_with(model, z, n, TailOptions::default())
}

pub fn resolvent_power_norm_with(model: &OperatorModel, z: Complex64, n: u32, opts: TailOptions) -> ResolventValue {
    match model {
        OperatorModel::Dense { matrix } => {
            ResolventValue { value: dense_power_norm(matrix, z, n), mode: EvalMode::DenseExact, tail: None }
        }
        OperatorModel::BlockFamily { family } => {
            let (value, report) = family_sup(family, z, n, 1, opts);
            ResolventValue { value, mode: EvalMode::BlockExactWithTail, tail: Some(report) }
        }
        OperatorModel::Scaled { inner, factor } => {
            // (sT - z)^(-m) = s^(-m) (T - z/s)^(-m)
            let base = resolvent_power_norm_with(inner, z / factor, n, opts);
            ResolventValue { value: base.value / factor.norm(), mode: EvalMode::Scaled, tail: base.tail }
        }
    }
}

/// `||M^(2^n)||^(1/2^n)` with the power formed by repeated squaring and
/// rescaling, so large `n` neither overflows nor underflows.
pub(crate) fn power_root_norm(m: ComplexMatrix, n: u32) -> f64 {
    fn max_entry(m: &ComplexMatrix) -> f64 {
        m.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
    fn top_sv(m: &ComplexMatrix) -> f64 {
        if m.rows() == 2 && m.cols() == 2 {
            sv2x2(m).map(|s| s.sigma_max).unwrap_or(0.0)
        } else {
            jacobi_singular_values(m).first().copied().unwrap_or(0.0)
        }
    }
    if n == 0 {
        return top_sv(&m);
    }
    let s = max_entry(&m);
    if s == 0.0 {
        return 0.0;
    }
    if !s.is_finite() {
        return f64::INFINITY;
    }
    let mut m = m.scaled(Complex64::new(1.0 / s, 0.0));
    let mut log_c = s.ln();
    for _ in 0..n {
        m = m.matmul(&m);
        log_c *= 2.0;
        let s = max_entry(&m);
        if s == 0.0 {
            return 0.0;
        }
        m = m.scaled(Complex64::new(1.0 / s, 0.0));
        log_c += s.ln();
    }
    let top = top_sv(&m);
    if top == 0.0 {
        return 0.0;
    }
    ((log_c + top.ln()) / 2f64.powi(n as i32)).exp()
}
