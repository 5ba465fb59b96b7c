use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::components::decoupled_components;
use super::lu::LuFactors;
use super::matrix::norm2;
use super::{ComplexMatrix, KernelError};

/// Iteration cap for inverse and power iteration.
pub const MAX_ITERATIONS: usize = 500;
/// Relative Rayleigh-quotient change treated as stagnation.
pub const STAGNATION_TOL: f64 = 1e-12;
/// Largest block size that falls back to a full Jacobi SVD when iteration stalls.
pub const JACOBI_FALLBACK_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularExtremes {
    pub sigma_max: f64,
    pub sigma_min: f64,
}

/// Closed-form extreme singular values of a 2x2 matrix.
///
/// With `F = sum |m_ij|^2` and `D = |det M|^2`, `sigma_max^2 = (F + sqrt(F^2 - 4D)) / 2`.
/// `sigma_min` is recovered as `sqrt(D) / sigma_max`, which is the same root of
/// the characteristic quadratic without the cancellation of the minus branch.
pub fn sv2x2(m: &ComplexMatrix) -> Result<SingularExtremes, KernelError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(KernelError::Dimension(format!(
            "sv2x2 needs a 2x2 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    Ok(sv2x2_entries(a, b, c, d))
}

pub(crate) fn sv2x2_entries(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> SingularExtremes {
    let f = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let det = (a * d - b * c).norm();
    if f == 0.0 {
        return SingularExtremes { sigma_max: 0.0, sigma_min: 0.0 };
    }
    let dd = det * det;
    let mut rad = f * f - 4.0 * dd;
    if rad < 0.0 {
        // only roundoff can make this negative
        debug_assert!(rad >= -1e-14 * f * f);
        rad = 0.0;
    }
    let smax2 = 0.5 * (f + rad.sqrt());
    let sigma_max = smax2.sqrt();
    let sigma_min = if det == 0.0 { 0.0 } else { (det / sigma_max).min(sigma_max) };
    SingularExtremes { sigma_max, sigma_min }
}

/// Result of a power iteration on a Gram operator `G = F^* F`.
#[derive(Debug, Clone, Copy)]
pub struct PowerOutcome {
    /// Rayleigh quotient estimate of the top eigenvalue of `G`, i.e. `||F||^2`.
    pub theta: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Power iteration for `||F||` given `F` and `F^*` as closures. Starts from
/// the normalised all-ones vector.
pub fn power_iterate<Fw, Ad>(dim: usize, mut forward: Fw, mut adjoint: Ad) -> PowerOutcome
where
    Fw: FnMut(&[Complex64]) -> Vec<Complex64>,
    Ad: FnMut(&[Complex64]) -> Vec<Complex64>,
{
    let mut x = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let mut theta_prev = 0.0_f64;
    let mut theta = 0.0;
    for it in 1..=MAX_ITERATIONS {
        let v = forward(&x);
        theta = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if theta == 0.0 {
            // start vector in the kernel, or F = 0
            return PowerOutcome { theta, converged: false, iterations: it };
        }
        let w = adjoint(&v);
        let resid = w
            .iter()
            .zip(&x)
            .map(|(wi, xi)| (wi - xi * theta).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let stagnant = (theta - theta_prev).abs() <= STAGNATION_TOL * theta;
        let converged = resid <= 1e-10 * theta || (stagnant && resid <= 1e-5 * theta);
        let wn = norm2(&w);
        if converged || wn == 0.0 {
            return PowerOutcome { theta, converged: true, iterations: it };
        }
        x = w.into_iter().map(|z| z / wn).collect();
        theta_prev = theta;
    }
    PowerOutcome { theta, converged: false, iterations: MAX_ITERATIONS }
}

/// All singular values by one-sided (Hestenes) Jacobi, descending.
pub fn jacobi_singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let a = if a.rows() < a.cols() { a.adjoint() } else { a.clone() };
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(u, v)| u.conj() * v).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..m {
                    let up = cols[p][i];
                    let uq = cols[q][i] * phase.conj();
                    cols[p][i] = up * cs - uq * sn;
                    cols[q][i] = up * sn + uq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

fn block_sigma_min(sub: &ComplexMatrix) -> f64 {
    match sub.rows() {
        1 => sub[(0, 0)].norm(),
        2 => sv2x2(sub).map(|s| s.sigma_min).unwrap_or(0.0),
        n => {
            let lu = match LuFactors::factor(sub) {
                Ok(lu) => lu,
                Err(_) => return 0.0,
            };
            // (A^* A)^{-1} = A^{-1} A^{-*}: forward applies A^{-*}, adjoint applies A^{-1}
            let out = power_iterate(
                n,
                |x| {
                    let mut y = x.to_vec();
                    lu.solve_adjoint_in_place(&mut y);
                    y
                },
                |y| {
                    let mut w = y.to_vec();
                    lu.solve_in_place(&mut w);
                    w
                },
            );
            if !out.converged && n <= JACOBI_FALLBACK_DIM {
                jacobi_singular_values(sub).last().copied().unwrap_or(0.0)
            } else {
                1.0 / out.theta.sqrt()
            }
        }
    }
}

fn block_sigma_max(sub: &ComplexMatrix) -> f64 {
    match (sub.rows(), sub.cols()) {
        (1, 1) => sub[(0, 0)].norm(),
        (2, 2) => sv2x2(sub).map(|s| s.sigma_max).unwrap_or(0.0),
        (m, n) => {
            let out = power_iterate(n, |x| sub.matvec(x), |v| sub.adjoint_matvec(v));
            if !out.converged && m.max(n) <= JACOBI_FALLBACK_DIM {
                jacobi_singular_values(sub).first().copied().unwrap_or(0.0)
            } else {
                out.theta.sqrt()
            }
        }
    }
}

/// Smallest singular value of a square matrix. Exactly singular input, as
/// detected by the LU pivots, yields `0`.
pub fn smallest_singular_value(a: &ComplexMatrix) -> Result<f64, KernelError> {
    let n = a.ensure_square()?;
    if n == 0 {
        return Err(KernelError::Dimension("empty matrix".into()));
    }
    let mut best = f64::INFINITY;
    for comp in decoupled_components(a) {
        let s = block_sigma_min(&a.principal_submatrix(&comp));
        if s < best {
            best = s;
        }
        if best == 0.0 {
            break;
        }
    }
    Ok(best)
}

/// Largest singular value (operator 2-norm).
pub fn largest_singular_value(a: &ComplexMatrix) -> Result<f64, KernelError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(KernelError::Dimension("empty matrix".into()));
    }
    if !a.is_square() {
        return Ok(block_sigma_max(a));
    }
    Ok(decoupled_components(a)
        .iter()
        .map(|comp| block_sigma_max(&a.principal_submatrix(comp)))
        .fold(0.0, f64::max))
}
