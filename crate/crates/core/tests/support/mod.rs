//! Independent reference computations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use pseudolab::numkernel::ComplexMatrix;
use pseudolab::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (a[p][k], a[q][k]);
                    a[p][k] = c * pk - s * qk;
                    a[q][k] = s * pk + c * qk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// All singular values of `m`, ascending. The real embedding
/// `E = [[Re, -Im], [Im, Re]]` repeats each singular value twice and the
/// symmetric matrix `[[0, E], [E^T, 0]]` has eigenvalues `+-` those, so every
/// singular value shows up four times among the absolute eigenvalues.
/// Nothing is squared, so small singular values keep full accuracy.
pub fn oracle_singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut e = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            e[i][j] = v.re;
            e[i + n][j + n] = v.re;
            e[i][j + n] = -v.im;
            e[i + n][j] = v.im;
        }
    }
    let d = 2 * n;
    let mut h = vec![vec![0.0; 2 * d]; 2 * d];
    for i in 0..d {
        for j in 0..d {
            h[i][j + d] = e[i][j];
            h[j + d][i] = e[i][j];
        }
    }
    let mut abs: Vec<f64> = symmetric_eigenvalues(h).into_iter().map(f64::abs).collect();
    abs.sort_by(f64::total_cmp);
    abs.chunks(4).map(|c| c.iter().sum::<f64>() / 4.0).collect()
}

fn euclid(a: Complex64, b: Complex64) -> f64 {
    ((a.re - b.re) * (a.re - b.re) + (a.im - b.im) * (a.im - b.im)).sqrt()
}

pub fn oracle_directed(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|&p| b.iter().map(|&q| euclid(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

pub fn oracle_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    oracle_directed(a, b).max(oracle_directed(b, a))
}
