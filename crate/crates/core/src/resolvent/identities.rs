use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ResolventError;
use crate::numkernel::{largest_singular_value, solve_factored, ComplexMatrix, KernelError};

fn resolvent(t: &ComplexMatrix, z: Complex64, name: &str) -> Result<ComplexMatrix, ResolventError> {
    solve_factored(&t.shifted(z), &ComplexMatrix::identity(t.rows())).map_err(|e| match e {
        KernelError::Singular { .. } => ResolventError::Singular { operator: name.to_string(), z, sigma_min: 0.0 },
        other => other.into(),
    })
}

/// Norm of
/// `R(l) - sum_{j=1}^{m-1} d^(j-1) R(l0)^j - d^(m-1) (I - d R(l0))^(m-1) R(l)^m`
/// with `d = l - l0`, an expression that vanishes identically.
pub fn expansion_residual(t: &ComplexMatrix, lambda: Complex64, lambda0: Complex64, l: u32) -> Result<f64, ResolventError> {
    if l < 2 {
        return Err(ResolventError::Precondition(format!("expansion order must be at least 2, got {l}")));
    }
    t.ensure_square()?;
    let r = resolvent(t, lambda, "T - lambda")?;
    let r0 = resolvent(t, lambda0, "T - lambda0")?;
    let d = lambda - lambda0;
    let n = t.rows();
    let mut acc = r.clone();
    let mut r0_pow = ComplexMatrix::identity(n);
    for j in 1..l {
        r0_pow = r0_pow.matmul(&r0);
        acc = acc.sub(&r0_pow.scaled(d.powu(j - 1)));
    }
    let mut factor = ComplexMatrix::identity(n).sub(&r0.scaled(d));
    factor = factor.power(l - 1);
    let last = factor.matmul(&r.power(l)).scaled(d.powu(l - 1));
    acc = acc.sub(&last);
    Ok(largest_singular_value(&acc)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerDiffBound {
    /// `||R(nu)^(2^n) - R(l)^(2^n)||`
    pub lhs: f64,
    /// `C^(2^n) (1 - |nu - l| C)^(-2^n) sum_{j=1}^{2^n} binom(2^n, j) C^j |nu - l|^j`, `C = ||R(l)||`.
    pub rhs: f64,
    pub holds: bool,
}

/// Compares the difference of resolvent powers at two nearby points with the
/// perturbation bound; needs `|nu - l| ||R(l)|| < 1`.
pub fn power_diff_bound_check(
    t: &ComplexMatrix,
    lambda: Complex64,
    nu: Complex64,
    n: u32,
) -> Result<PowerDiffBound, ResolventError> {
    t.ensure_square()?;
    let r = resolvent(t, lambda, "T - lambda")?;
    let c = largest_singular_value(&r)?;
    let delta = (nu - lambda).norm();
    if delta * c >= 1.0 {
        return Err(ResolventError::Precondition(format!(
            "|nu - lambda| ||R(lambda)|| = {} must be below 1",
            delta * c
        )));
    }
    let rn = resolvent(t, nu, "T - nu")?;
    let p = 1u32 << n;
    let lhs = largest_singular_value(&rn.power(p).sub(&r.power(p)))?;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 1..=p {
        binom = binom * f64::from(p - j + 1) / f64::from(j);
        sum += binom * (c * delta).powi(j as i32);
    }
    let rhs = c.powi(p as i32) / (1.0 - delta * c).powi(p as i32) * sum;
    Ok(PowerDiffBound { lhs, rhs, holds: lhs <= rhs * (1.0 + 1e-10) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 6.0]])
    }

    #[test]
    fn expansion_vanishes_on_pair() {
        let res = expansion_residual(&pair(), Complex64::i(), -Complex64::i(), 2).unwrap();
        assert!(res <= 1e-12);
        let same = expansion_residual(&pair(), Complex64::i(), Complex64::i(), 2).unwrap();
        assert_eq!(same, 0.0);
    }

    #[test]
    fn power_bound_on_pair() {
        let b = power_diff_bound_check(&pair(), Complex64::i(), Complex64::new(0.1, 1.0), 1).unwrap();
        assert!(b.holds);
        let z = power_diff_bound_check(&pair(), Complex64::i(), Complex64::i(), 1).unwrap();
        assert_eq!((z.lhs, z.rhs), (0.0, 0.0));
        assert!(z.holds);
    }

    #[test]
    fn far_nu_is_rejected() {
        let err = power_diff_bound_check(&pair(), Complex64::i(), Complex64::new(5.0, 1.0), 1).unwrap_err();
        assert!(matches!(err, ResolventError::Precondition(_)));
    }
}
