use num_complex::Complex64;

use super::components::decoupled_components;
use super::{ComplexMatrix, KernelError};

/// Pivots at or below this magnitude are treated as exact singularity.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// `PA = LU` with partial pivoting; `L` unit lower, both packed in `lu`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    // perm[i] is the original row now sitting in position i
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(a: &ComplexMatrix) -> Result<Self, KernelError> {
        let n = a.ensure_square()?;
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= PIVOT_FLOOR {
                return Err(KernelError::Singular { step: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let l = lu[i * n + k] / pivot;
                lu[i * n + k] = l;
                if l.re == 0.0 && l.im == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= l * u;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Overwrites `b` with the solution of `A x = b`.
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * y[j];
            }
            y[i] = s / self.lu[i * n + i];
        }
        b.copy_from_slice(&y);
    }

    /// Overwrites `b` with the solution of `A^* x = b`.
    pub fn solve_adjoint_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        // A^* = U^* L^* P, so solve U^* w = b, L^* v = w, x = P^T v
        let mut w = b.to_vec();
        for i in 0..n {
            let mut s = w[i];
            for j in 0..i {
                s -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = s / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut s = w[i];
            for j in i + 1..n {
                s -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = s;
        }
        for (i, &p) in self.perm.iter().enumerate() {
            b[p] = w[i];
        }
    }
}

/// Solves `A X = B` by LU with partial pivoting, factoring each decoupled
/// diagonal block of `A` separately.
pub fn solve_factored(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, KernelError> {
    let n = a.ensure_square()?;
    if b.rows() != n {
        return Err(KernelError::Dimension(format!(
            "right-hand side has {} rows, matrix is {n}x{n}",
            b.rows()
        )));
    }
    let mut x = ComplexMatrix::zeros(n, b.cols());
    for comp in decoupled_components(a) {
        let lu = LuFactors::factor(&a.principal_submatrix(&comp)).map_err(|e| match e {
            KernelError::Singular { step } => KernelError::Singular { step: comp[step] },
            other => other,
        })?;
        let mut col = vec![Complex64::new(0.0, 0.0); comp.len()];
        for j in 0..b.cols() {
            for (c, &i) in col.iter_mut().zip(&comp) {
                *c = b[(i, j)];
            }
            lu.solve_in_place(&mut col);
            for (c, &i) in col.iter().zip(&comp) {
                x[(i, j)] = *c;
            }
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_returns_rhs() {
        let b = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, -(j as f64)));
        let x = solve_factored(&ComplexMatrix::identity(3), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn antidiagonal_inverse() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[3.0, 0.0]]);
        let x = solve_factored(&a, &ComplexMatrix::identity(2)).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[0.0, 1.0 / 3.0], &[0.5, 0.0]]);
        for i in 0..2 {
            for j in 0..2 {
                assert!((x[(i, j)] - expect[(i, j)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn singular_pivot_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[2.0, 4.0, 0.0], &[0.0, 1.0, 1.0]]);
        let err = solve_factored(&a, &ComplexMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, KernelError::Singular { .. }));
    }

    #[test]
    fn adjoint_solve_matches_explicit_adjoint() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| {
            c(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64)
        })
        .shifted(c(0.3, -1.1));
        let lu = LuFactors::factor(&a).unwrap();
        let rhs: Vec<_> = (0..4).map(|i| c(1.0, i as f64)).collect();
        let mut x = rhs.clone();
        lu.solve_adjoint_in_place(&mut x);
        let back = a.adjoint_matvec(&x);
        for (u, v) in back.iter().zip(&rhs) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn non_square_is_dimension_error() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            solve_factored(&a, &ComplexMatrix::zeros(2, 1)),
            Err(KernelError::Dimension(_))
        ));
    }
}
