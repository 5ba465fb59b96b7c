use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BlockShape, DiagBlockFamily, OperatorError};
use crate::numkernel::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum OperatorModel {
    Dense { matrix: ComplexMatrix },
    BlockFamily { family: DiagBlockFamily },
    /// `factor * inner`.
    Scaled { inner: Box<OperatorModel>, factor: Complex64 },
}

impl OperatorModel {
    pub fn dense(matrix: ComplexMatrix) -> Result<Self, OperatorError> {
        matrix.ensure_square()?;
        Ok(OperatorModel::Dense { matrix })
    }

    pub fn block_family(family: DiagBlockFamily) -> Self {
        OperatorModel::BlockFamily { family }
    }

    pub fn validate(&self) -> Result<(), OperatorError> {
        match self {
            OperatorModel::Dense { matrix } => {
                matrix.ensure_square()?;
                Ok(())
            }
            OperatorModel::BlockFamily { family } => family.validate(),
            OperatorModel::Scaled { inner, factor } => {
                if *factor == Complex64::new(0.0, 0.0) || !factor.is_finite() {
                    return Err(OperatorError::Domain(format!("scale factor must be finite and nonzero, got {factor}")));
                }
                inner.validate()
            }
        }
    }

    /// Dense stand-in: the matrix itself, or the leading `n_blocks` blocks of
    /// a family, scaled as wrapped.
    pub fn dense_proxy(&self, n_blocks: usize) -> Result<ComplexMatrix, OperatorError> {
        match self {
            OperatorModel::Dense { matrix } => Ok(matrix.clone()),
            OperatorModel::BlockFamily { family } => family.truncation(n_blocks),
            OperatorModel::Scaled { inner, factor } => Ok(inner.dense_proxy(n_blocks)?.scaled(*factor)),
        }
    }
}

/// `s * model`; resolvent evaluation then uses `||(sT - z)^-1|| = |s|^-1 ||(T - z/s)^-1||`.
pub fn scale_operator(model: OperatorModel, s: Complex64) -> Result<OperatorModel, OperatorError> {
    if s == Complex64::new(0.0, 0.0) || !s.is_finite() {
        return Err(OperatorError::Domain(format!("scale factor must be finite and nonzero, got {s}")));
    }
    Ok(OperatorModel::Scaled { inner: Box::new(model), factor: s })
}

/// Eigenvalues of block `B_k`: `+-sqrt(a f(a))` for 2x2 blocks, numerical
/// characteristic roots for 4x4 blocks. Sorted by real then imaginary part.
pub fn block_eigenvalues(family: &DiagBlockFamily, k: usize) -> Vec<Complex64> {
    let mut out = match family.shape {
        BlockShape::TwoByTwo => {
            let a = family.alpha(k);
            let r = (a * family.symbol.eval(a)).sqrt();
            vec![Complex64::new(-r, 0.0), Complex64::new(r, 0.0)]
        }
        BlockShape::FourByFour => characteristic_roots(&family.block(k)),
    };
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out
}

/// Roots of `det(lambda - A)` via Faddeev-LeVerrier coefficients and
/// Durand-Kerner iteration. Intended for small blocks.
pub(crate) fn characteristic_roots(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    // coeffs[i] multiplies lambda^i, monic
    let mut coeffs = vec![zero; n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m);
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a.matmul(&m);
        let trace: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[n - k] = -trace / k as f64;
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(zero, |acc, &c| acc * z + c);
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..500 {
        let mut delta = 0.0_f64;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * radius {
            break;
        }
    }
    roots
}
