use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{scale_operator, DiagBlockFamily, OperatorError, OperatorModel};
use crate::numkernel::ComplexMatrix;

/// Direction in which a moving eigenvalue approaches its limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// factor `1 - 1/k`
    Shrink,
    /// factor `1 + 1/k`
    Grow,
}

impl Direction {
    pub fn factor(self, k: usize) -> f64 {
        match self {
            Direction::Shrink => 1.0 - 1.0 / k as f64,
            Direction::Grow => 1.0 + 1.0 / k as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceKind {
    /// `T_k = diag(B_1, ..., B_k)`; the limit is proxied by a truncation of
    /// at least `reference_n` blocks.
    Truncation { family: DiagBlockFamily, reference_n: usize },
    /// `T_k = factor(k) * base`.
    Scaling { base: OperatorModel, direction: Direction },
    /// `T_k = diag(factor(k) * lambda1, lambda2)`.
    DiagPair { lambda1: f64, lambda2: f64, direction: Direction },
    /// `T_k = members[k - 1]`.
    Explicit { members: Vec<ComplexMatrix>, limit: ComplexMatrix },
}

/// A sequence `{T_k}` together with its limit model and the common
/// resolvent point used for generalised norm resolvent convergence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorSequence {
    pub kind: SequenceKind,
    pub anchor: Complex64,
}

impl OperatorSequence {
    pub fn new(kind: SequenceKind, anchor: Complex64) -> Self {
        Self { kind, anchor }
    }

    /// Smallest valid index.
    pub fn first_index(&self) -> usize {
        match &self.kind {
            SequenceKind::Scaling { direction: Direction::Shrink, .. }
            | SequenceKind::DiagPair { direction: Direction::Shrink, .. } => 2,
            _ => 1,
        }
    }

    pub fn member(&self, k: usize) -> Result<OperatorModel, OperatorError> {
        if k < self.first_index() {
            return Err(OperatorError::Domain(format!("sequence index {k} is below {}", self.first_index())));
        }
        match &self.kind {
            SequenceKind::Truncation { family, .. } => OperatorModel::dense(family.truncation(k)?),
            SequenceKind::Scaling { base, direction } => {
                scale_operator(base.clone(), Complex64::new(direction.factor(k), 0.0))
            }
            SequenceKind::DiagPair { lambda1, lambda2, direction } => OperatorModel::dense(ComplexMatrix::from_diag(&[
                Complex64::new(direction.factor(k) * lambda1, 0.0),
                Complex64::new(*lambda2, 0.0),
            ])),
            SequenceKind::Explicit { members, .. } => members
                .get(k - 1)
                .cloned()
                .ok_or_else(|| OperatorError::Domain(format!("sequence has {} members, asked for {k}", members.len())))
                .and_then(OperatorModel::dense),
        }
    }

    pub fn limit(&self) -> OperatorModel {
        match &self.kind {
            SequenceKind::Truncation { family, .. } => OperatorModel::block_family(family.clone()),
            SequenceKind::Scaling { base, .. } => base.clone(),
            SequenceKind::DiagPair { lambda1, lambda2, .. } => OperatorModel::Dense {
                matrix: ComplexMatrix::from_diag(&[Complex64::new(*lambda1, 0.0), Complex64::new(*lambda2, 0.0)]),
            },
            SequenceKind::Explicit { limit, .. } => OperatorModel::Dense { matrix: limit.clone() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_pair_members() {
        let seq = OperatorSequence::new(
            SequenceKind::DiagPair { lambda1: 2.0, lambda2: 6.0, direction: Direction::Shrink },
            Complex64::i(),
        );
        assert!(seq.member(1).is_err());
        match seq.member(4).unwrap() {
            OperatorModel::Dense { matrix } => {
                assert_eq!(matrix[(0, 0)].re, 1.5);
                assert_eq!(matrix[(1, 1)].re, 6.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
