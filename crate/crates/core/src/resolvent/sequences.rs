use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{family_sup, resolvent_power_norm, ResolventError, TailOptions};
use crate::numkernel::{largest_singular_value, smallest_singular_value, solve_factored, ComplexMatrix};
use crate::operators::{OperatorModel, OperatorSequence, SequenceKind, DEFAULT_REFERENCE_N};

/// `sigma_min(T - z)` at or below this is treated as `z` in the spectrum.
pub const RESOLVENT_FLOOR: f64 = 1e-10;

/// `||R_k(z) P_k - R(z) P||` with the limit represented by a dense proxy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GnrDefect {
    pub defect: f64,
    /// Blocks in the reference truncation, when the limit is infinite.
    pub reference_n: Option<usize>,
    /// Bound on what the proxy leaves out: sup of the omitted block norms.
    pub proxy_error: f64,
}

fn scaled_family_tail(model: &OperatorModel, z: Complex64, start: usize) -> f64 {
    match model {
        OperatorModel::Dense { .. } => 0.0,
        OperatorModel::BlockFamily { family } => family_sup(family, z, 0, start, TailOptions::default()).0,
        OperatorModel::Scaled { inner, factor } => scaled_family_tail(inner, z / factor, start) / factor.norm(),
    }
}

fn checked_resolvent(t: &ComplexMatrix, z: Complex64, name: &str) -> Result<ComplexMatrix, ResolventError> {
    let shifted = t.shifted(z);
    let smin = smallest_singular_value(&shifted)?;
    if smin <= RESOLVENT_FLOOR {
        return Err(ResolventError::Singular { operator: name.to_string(), z, sigma_min: smin });
    }
    Ok(solve_factored(&shifted, &ComplexMatrix::identity(t.rows()))?)
}

/// Generalised norm resolvent defect of member `k` at `z`.
///
/// Truncation sequences compare against a reference truncation with
/// `max(reference_n, 8k)` blocks; the supremum of the block resolvent norms
/// beyond it is returned as `proxy_error`. Both resolvents are embedded in the
/// larger space by zero padding (leading coordinate projections).
pub fn gnr_defect(seq: &OperatorSequence, k: usize, z: Complex64) -> Result<GnrDefect, ResolventError> {
    let member = seq.member(k)?;
    let limit = seq.limit();
    let (tk, tref, reference_n, proxy_error) = match &seq.kind {
        SequenceKind::Truncation { family, reference_n } => {
            let n_ref = (*reference_n).max(8 * k);
            let tail = family_sup(family, z, 0, n_ref + 1, TailOptions::default()).0;
            (family.truncation(k)?, family.truncation(n_ref)?, Some(n_ref), tail)
        }
        SequenceKind::Scaling { base, .. } => match base {
            OperatorModel::Dense { .. } => (member.dense_proxy(1)?, limit.dense_proxy(1)?, None, 0.0),
            _ => {
                let n_ref = DEFAULT_REFERENCE_N.max(8 * k);
                let tail = scaled_family_tail(&member, z, n_ref + 1) + scaled_family_tail(&limit, z, n_ref + 1);
                (member.dense_proxy(n_ref)?, limit.dense_proxy(n_ref)?, Some(n_ref), tail)
            }
        },
        SequenceKind::DiagPair { .. } | SequenceKind::Explicit { .. } => {
            (member.dense_proxy(1)?, limit.dense_proxy(1)?, None, 0.0)
        }
    };
    let rk = checked_resolvent(&tk, z, &format!("T_{k}"))?;
    let rref = checked_resolvent(&tref, z, "limit operator")?;
    let dim = rk.rows().max(rref.rows());
    let diff = rk.padded(dim).sub(&rref.padded(dim));
    Ok(GnrDefect { defect: largest_singular_value(&diff)?, reference_n, proxy_error })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessProbe {
    pub z: Complex64,
    pub k_range: Vec<usize>,
    /// `||(T_k - z)^(-2^n)||^(1/2^n)` per entry of `k_range`.
    pub values: Vec<f64>,
    pub sup_norm: f64,
    pub in_region: bool,
}

/// Stagnation heuristic for membership of `z` in the region of boundedness:
/// every value finite and the maximum over the second half of `ks` at most
/// ten times the maximum over the first half. A diagnostic, not a proof.
pub fn boundedness_probe(
    seq: &OperatorSequence,
    z: Complex64,
    ks: &[usize],
    n: u32,
) -> Result<BoundednessProbe, ResolventError> {
    if ks.is_empty() {
        return Err(ResolventError::Precondition("boundedness probe needs at least one index".into()));
    }
    let mut values = Vec::with_capacity(ks.len());
    for &k in ks {
        values.push(resolvent_power_norm(&seq.member(k)?, z, n).value);
    }
    let sup_norm = values.iter().copied().fold(0.0, f64::max);
    let half = ks.len() / 2;
    let lower = values[..half].iter().copied().fold(0.0, f64::max);
    let upper = values[half..].iter().copied().fold(0.0, f64::max);
    let in_region = sup_norm.is_finite() && (half == 0 || upper <= 10.0 * lower);
    Ok(BoundednessProbe { z, k_range: ks.to_vec(), values, sup_norm, in_region })
}
