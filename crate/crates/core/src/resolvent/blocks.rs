//! Resolvent norms of infinite block-diagonal families.
//!
//! The supremum over blocks is split into an exact scan over `k <= K0` and a
//! tail `k > K0` that is bounded analytically, so the reported value is
//! certified rather than a truncated guess. `K0` grows by doubling until the
//! tail bound closes or the cap is reached.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::power_root_norm;
use crate::numkernel::sv2x2_entries;
use crate::operators::{four_block, BlockShape, DiagBlockFamily};

/// Default slack between the reported supremum and the certified tail level.
pub const TAIL_TOL: f64 = 1e-9;
/// Largest block index scanned before giving up on a certificate.
pub const TAIL_CAP: usize = 1_000_000;
/// Blocks scanned exactly by the sampled tail of 4x4 families.
pub const SAMPLED_EXACT_BLOCKS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailOptions {
    pub tail_tol: f64,
    pub cap: usize,
}

impl Default for TailOptions {
    fn default() -> Self {
        Self { tail_tol: TAIL_TOL, cap: TAIL_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    /// Quadratic lower bound on `sigma_min^2` of every tail block (finite `C`, `n = 0`).
    DeficitQuadratic,
    /// Monotone upper bound on tail block norms that tends to zero.
    DecayingBound,
    /// `C = 0`: block norms grow without bound, the supremum is infinite.
    WeylDivergence,
    /// Exact blocks up to a cutoff plus geometrically sampled indices; not a proof.
    Sampled,
    /// `z` is an eigenvalue of some scanned block.
    Spectrum,
}

/// Diagnostics of the supremum over blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    /// Largest exactly evaluated block value.
    pub best_block: f64,
    /// Index attaining `best_block`.
    pub argmax_k: Option<usize>,
    /// Blocks `k <= cutoff` were evaluated exactly.
    pub cutoff: usize,
    /// `lim_k` of the block values.
    pub tail_limit: f64,
    pub method: TailMethod,
    pub certified: bool,
}

/// `||(B - z)^(-2^n)||^(1/2^n)` for a 2x2 block `[[0, f], [a, 0]]`.
pub fn block2_value(a: f64, f: f64, z: Complex64, n: u32) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    if n == 0 {
        let s = sv2x2_entries(-z, Complex64::new(f, 0.0), Complex64::new(a, 0.0), -z).sigma_min;
        return if s == 0.0 { f64::INFINITY } else { 1.0 / s };
    }
    let det = z * z - a * f;
    if det == zero {
        return f64::INFINITY;
    }
    let r = crate::numkernel::ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => -z / det,
        (0, 1) => Complex64::new(-f, 0.0) / det,
        _ => Complex64::new(-a, 0.0) / det,
    });
    power_root_norm(r, n)
}

/// `||(B - z)^(-2^n)||^(1/2^n)` for the 4x4 block with weights `a`, `b`,
/// using `B^4 = a^2 b^2 I`.
pub fn block4_value(a: f64, b: f64, z: Complex64, n: u32) -> f64 {
    let denom = Complex64::new(a * a * b * b, 0.0) - z.powu(4);
    if denom == Complex64::new(0.0, 0.0) {
        return f64::INFINITY;
    }
    let bm = four_block(a, b);
    let b2 = bm.matmul(&bm);
    let b3 = b2.matmul(&bm);
    let mut r = b3.add(&b2.scaled(z)).add(&bm.scaled(z * z));
    for i in 0..4 {
        r[(i, i)] += z * z * z;
    }
    power_root_norm(r.scaled(denom.inv()), n)
}

/// Limit of the 4x4 block values as `a -> inf` with `b -> c`.
fn block4_limit(c: f64, z: Complex64, n: u32) -> f64 {
    let mut l = crate::numkernel::ComplexMatrix::zeros(4, 4);
    l[(3, 0)] = Complex64::new(1.0 / c, 0.0);
    l[(1, 3)] = Complex64::new(1.0 / c, 0.0);
    l[(1, 0)] = z / (c * c);
    power_root_norm(l, n)
}

fn block_value(family: &DiagBlockFamily, k: usize, z: Complex64, n: u32) -> f64 {
    let a = family.alpha(k);
    let f = family.symbol.eval(a);
    match family.shape {
        BlockShape::TwoByTwo => block2_value(a, f, z, n),
        BlockShape::FourByFour => block4_value(a, f, z, n),
    }
}

fn tail_limit(family: &DiagBlockFamily, z: Complex64, n: u32) -> f64 {
    let c = family.tail_c;
    match family.shape {
        BlockShape::FourByFour => block4_limit(c, z, n),
        BlockShape::TwoByTwo => {
            if c == 0.0 {
                f64::INFINITY
            } else if n == 0 && c.is_finite() {
                // limit of (B - z)^-1 is [[0, 0], [1/C, 0]]
                1.0 / c
            } else {
                // that limit is nilpotent; for C = inf the blocks vanish
                0.0
            }
        }
    }
}

/// Certificate that every 2x2 block with `a >= a0` has value `<= level`
/// (finite `C > 0`, `n = 0`).
///
/// With `s = 1/level`, a block satisfies the bound iff `g = D - s^2 F + s^4 >= 0`
/// and `F >= 2 s^2`, where `F = 2r^2 + a^2 + f^2` and `D = |a f - z^2|^2`. Writing
/// `x = 1/a` and `y = sqrt(x)`,
/// `g / a^2 = (f^2 - s^2) - 2 f Re(z^2) x + ((r^2 - s^2)^2 - s^2 f^2) x^2`,
/// which is bounded below by a quadratic `P(y)` using the symbol's deficit
/// envelope and its range on `[a0, inf)`.
fn deficit_certificate(family: &DiagBlockFamily, a0: f64, z: Complex64, level: f64) -> bool {
    let c = family.tail_c;
    let Some(env) = family.symbol.deficit_bound(a0) else {
        return false;
    };
    let s2 = 1.0 / (level * level);
    if !(c * c > s2) || a0 * a0 < 2.0 * s2 {
        return false;
    }
    let (f_min, f_max) = family.symbol.tail_range(a0);
    let r2 = z.norm_sqr();
    let re_z2 = (z * z).re;
    let f_t = if re_z2 > 0.0 { f_max } else { f_min };
    let y0 = 1.0 / a0.sqrt();
    let a_coef = c * c - s2;
    let b = -2.0 * f_t * re_z2;
    let q = (r2 - s2).powi(2) - s2 * f_max * f_max;
    let c2 = b - env.linear_coeff + q.min(0.0) * y0 * y0;
    let c1 = -env.sqrt_coeff;
    let p = |y: f64| a_coef + c1 * y + c2 * y * y;
    let mut min = p(0.0).min(p(y0));
    if c2 > 0.0 {
        let ystar = -c1 / (2.0 * c2);
        if ystar > 0.0 && ystar < y0 {
            min = min.min(p(ystar));
        }
    }
    min > 0.0
}

/// Upper bound on every block value with `a >= a0` when `f(a) <= a` there and
/// the bound tends to zero; `None` when not applicable at `a0`.
fn decaying_bound(family: &DiagBlockFamily, a0: f64, z: Complex64, n: u32) -> Option<f64> {
    if !family.symbol.dominated_by_identity(a0) {
        return None;
    }
    let (f_lo, _) = family.symbol.tail_range(a0);
    let r = z.norm();
    let u = a0 * f_lo - r * r;
    if !(u > 0.0) {
        return None;
    }
    if n == 0 {
        if family.tail_c.is_finite() {
            return None;
        }
        // ||(B - z)^-1|| <= (r + max(a, f)) / (a f - r^2), decreasing in a and f
        Some((r + a0) / u)
    } else {
        // ||(B - z)^-2|| <= (r^2 + a f + 2 r a) / (a f - r^2)^2, and the 2^n-th root
        // of the 2^n-th power never exceeds the square root of the square
        let sq = (1.0 / u) * (1.0 + (2.0 * r * r + 2.0 * r * a0) / u);
        Some(sq.sqrt())
    }
}

/// `sup_{k >= start} ||(B_k - z)^(-2^n)||^(1/2^n)` with diagnostics.
pub fn family_sup(family: &DiagBlockFamily, z: Complex64, n: u32, start: usize, opts: TailOptions) -> (f64, TailReport) {
    let limit = tail_limit(family, z, n);
    let mut report = TailReport {
        best_block: 0.0,
        argmax_k: None,
        cutoff: start.saturating_sub(1),
        tail_limit: limit,
        method: TailMethod::Sampled,
        certified: false,
    };

    if family.shape == BlockShape::TwoByTwo && family.tail_c == 0.0 && n == 0 {
        // a / |a f - z^2| >= 1 / (f + |z|^2 / a) -> inf
        report.method = TailMethod::WeylDivergence;
        report.certified = true;
        return (f64::INFINITY, report);
    }

    let scan = |from: usize, to: usize, report: &mut TailReport| -> bool {
        for k in from..=to {
            let v = block_value(family, k, z, n);
            if v > report.best_block || report.argmax_k.is_none() {
                report.best_block = v;
                report.argmax_k = Some(k);
            }
            if v == f64::INFINITY {
                report.cutoff = k;
                report.method = TailMethod::Spectrum;
                report.certified = true;
                return true;
            }
        }
        report.cutoff = to;
        false
    };

    let sampled = family.shape == BlockShape::FourByFour || family.tail_c == 0.0;
    if sampled {
        let exact_end = (start + SAMPLED_EXACT_BLOCKS - 1).min(opts.cap.max(start));
        if scan(start, exact_end, &mut report) {
            return (f64::INFINITY, report);
        }
        let mut k = exact_end.saturating_mul(2);
        while k <= opts.cap && family.alpha(k).is_finite() {
            if scan(k, k, &mut report) {
                return (f64::INFINITY, report);
            }
            k = k.saturating_mul(2);
        }
        report.cutoff = exact_end;
        return (report.best_block.max(limit), report);
    }

    let mut end = start.max(1).saturating_mul(2).max(start + 63);
    let mut from = start;
    loop {
        let end_now = end.min(opts.cap.max(start));
        if scan(from, end_now, &mut report) {
            return (f64::INFINITY, report);
        }
        let a0 = family.alpha(end_now + 1);
        let best = report.best_block;
        let closed = if !a0.is_finite() {
            false
        } else if n == 0 && family.tail_c.is_finite() {
            let level = best.max(limit) + opts.tail_tol;
            report.method = TailMethod::DeficitQuadratic;
            deficit_certificate(family, a0, z, level)
        } else {
            report.method = TailMethod::DecayingBound;
            decaying_bound(family, a0, z, n).is_some_and(|b| b <= best.max(limit))
        };
        if closed {
            report.certified = true;
            return (best.max(limit), report);
        }
        if end_now >= opts.cap || !a0.is_finite() {
            return (best.max(limit), report);
        }
        from = end_now + 1;
        end = end_now.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{AlphaRule, SymbolSpec};

    fn fam(symbol: SymbolSpec, shape: BlockShape) -> DiagBlockFamily {
        DiagBlockFamily::new(AlphaRule::default(), symbol, shape).unwrap()
    }

    #[test]
    fn block_value_at_origin() {
        // sigma values of [[0, f], [a, 0]] are {a, f}
        assert_eq!(block2_value(3.0, 4.0 / 3.0, Complex64::new(0.0, 0.0), 0), 0.75);
        assert_eq!(block2_value(2.0, 2.0, Complex64::new(2.0, 0.0), 0), f64::INFINITY);
    }

    #[test]
    fn constant_region_value_is_one() {
        let f = fam(SymbolSpec::OnePlusInv, BlockShape::TwoByTwo);
        for z in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.2), Complex64::new(0.0, 0.45)] {
            let (v, rep) = family_sup(&f, z, 0, 1, TailOptions::default());
            assert_eq!(v, 1.0);
            assert!(rep.certified, "{z}: {rep:?}");
        }
    }

    #[test]
    fn power_family_sup_is_attained() {
        let f = fam(SymbolSpec::PowerBeta { beta: 0.5 }, BlockShape::TwoByTwo);
        let z = Complex64::new(1.0, 1.0);
        let (v, rep) = family_sup(&f, z, 0, 1, TailOptions::default());
        assert!(rep.certified);
        let brute = (1..200_000).map(|k| block_value(&f, k, z, 0)).fold(0.0, f64::max);
        assert_eq!(v, brute);
    }

    #[test]
    fn four_by_four_family_origin_square_root() {
        let f = fam(SymbolSpec::OnePlusInv, BlockShape::FourByFour);
        let z = Complex64::new(0.0, 0.0);
        let (v, rep) = family_sup(&f, z, 1, 1, TailOptions::default());
        assert_eq!(v, 1.0);
        assert!(rep.best_block < 1.0);
        // ||B^-2|| = 1 / b^2 for the first block
        assert!((block4_value(2.0, 1.5, z, 1) - 1.0 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn empty_resolvent_sup_is_infinite() {
        let f = fam(SymbolSpec::Inverse, BlockShape::TwoByTwo);
        let (v, rep) = family_sup(&f, Complex64::new(0.0, 2.0), 0, 1, TailOptions::default());
        assert_eq!(v, f64::INFINITY);
        assert_eq!(rep.method, TailMethod::WeylDivergence);
    }
}
