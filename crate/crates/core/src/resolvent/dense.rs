use num_complex::Complex64;

use super::power_root_norm;
use crate::numkernel::{
    decoupled_components, power_iterate, smallest_singular_value, solve_factored, ComplexMatrix, LuFactors,
    JACOBI_FALLBACK_DIM,
};

/// `1 / sigma_min(A - z)`, infinite when the shift is singular.
pub fn dense_resolvent_norm(a: &ComplexMatrix, z: Complex64) -> f64 {
    match smallest_singular_value(&a.shifted(z)) {
        Ok(s) if s > 0.0 => 1.0 / s,
        _ => f64::INFINITY,
    }
}

/// `||(A - z)^(-2^n)||^(1/2^n)`, taken as the maximum over the decoupled
/// diagonal blocks of `A`.
pub fn dense_power_norm(a: &ComplexMatrix, z: Complex64, n: u32) -> f64 {
    if n == 0 {
        return dense_resolvent_norm(a, z);
    }
    let shifted = a.shifted(z);
    let mut best = 0.0_f64;
    for comp in decoupled_components(&shifted) {
        let sub = shifted.principal_submatrix(&comp);
        let v = component_power_norm(&sub, n);
        if v > best {
            best = v;
        }
        if best == f64::INFINITY {
            break;
        }
    }
    best
}

fn component_power_norm(m: &ComplexMatrix, n: u32) -> f64 {
    match m.rows() {
        // same value for every n: |d^(-2^n)|^(1/2^n) = 1/|d|
        1 => {
            let d = m[(0, 0)].norm();
            if d == 0.0 {
                f64::INFINITY
            } else {
                1.0 / d
            }
        }
        2 => {
            let (p, q, r, t) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            let det = p * t - q * r;
            if det == Complex64::new(0.0, 0.0) {
                return f64::INFINITY;
            }
            let inv = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => t / det,
                (0, 1) => -q / det,
                (1, 0) => -r / det,
                _ => p / det,
            });
            power_root_norm(inv, n)
        }
        dim => {
            let lu = match LuFactors::factor(m) {
                Ok(lu) => lu,
                Err(_) => return f64::INFINITY,
            };
            let reps = 1usize << n;
            let out = power_iterate(
                dim,
                |x| {
                    let mut y = x.to_vec();
                    for _ in 0..reps {
                        lu.solve_in_place(&mut y);
                    }
                    y
                },
                |v| {
                    let mut y = v.to_vec();
                    for _ in 0..reps {
                        lu.solve_adjoint_in_place(&mut y);
                    }
                    y
                },
            );
            if !out.converged && dim <= JACOBI_FALLBACK_DIM {
                match solve_factored(m, &ComplexMatrix::identity(dim)) {
                    Ok(inv) => power_root_norm(inv, n),
                    Err(_) => f64::INFINITY,
                }
            } else if out.theta == 0.0 {
                f64::INFINITY
            } else {
                out.theta.powf(1.0 / 2f64.powi(n as i32 + 1))
            }
        }
    }
}
