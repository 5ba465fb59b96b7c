//! Distances between finite point sets taken from lattice masks: directed
//! and symmetric Hausdorff distance and closed delta-neighbourhoods.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pseudospectra::{GridRegion, LevelSetMask};

/// Sets up to this size use the direct double loop.
pub const BRUTE_FORCE_LIMIT: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("Hausdorff distance needs non-empty sets; the {0} set is empty")]
    EmptySet(&'static str),
    #[error("delta must be positive and finite, got {0}")]
    Delta(f64),
    #[error("set carries no lattice to take a neighbourhood on")]
    NoLattice,
}

/// Finite point set, optionally tied to the lattice it was sampled from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskSet {
    pub points: Vec<Complex64>,
    pub lattice: Option<GridRegion>,
}

impl MaskSet {
    pub fn from_points(points: Vec<Complex64>) -> Self {
        Self { points, lattice: None }
    }

    pub fn from_mask(mask: &LevelSetMask) -> Self {
        Self { points: mask.member_points(), lattice: Some(mask.region) }
    }

    /// Members of `flags` on `region`, indexed like [`GridRegion::index`].
    pub fn from_flags(region: &GridRegion, flags: &[bool]) -> Self {
        let points = flags
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(idx, _)| {
                let (i, j) = region.coords(idx);
                region.point(i, j)
            })
            .collect();
        Self { points, lattice: Some(*region) }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn dist2(a: Complex64, b: Complex64) -> f64 {
    let dx = a.re - b.re;
    let dy = a.im - b.im;
    dx * dx + dy * dy
}

/// Nearest-neighbour queries on a fixed point set, bucketed on a square grid.
struct Buckets<'a> {
    points: &'a [Complex64],
    cell: f64,
    origin: Complex64,
    map: HashMap<(i64, i64), Vec<usize>>,
    span: i64,
}

impl<'a> Buckets<'a> {
    fn new(points: &'a [Complex64], cell_hint: Option<f64>) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let extent = (hi.re - lo.re).max(hi.im - lo.im);
        let cell = match cell_hint {
            Some(h) if h > 0.0 => h,
            _ => (extent / (points.len() as f64).sqrt()).max(f64::MIN_POSITIVE),
        };
        let cell = if extent > 0.0 { cell } else { 1.0 };
        let mut map: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            map.entry(Self::key(*p, lo, cell)).or_default().push(i);
        }
        let span = (extent / cell).ceil() as i64 + 1;
        Self { points, cell, origin: lo, map, span }
    }

    fn key(p: Complex64, origin: Complex64, cell: f64) -> (i64, i64) {
        (((p.re - origin.re) / cell).floor() as i64, ((p.im - origin.im) / cell).floor() as i64)
    }

    /// Squared distance from `q` to the nearest stored point.
    fn nearest2(&self, q: Complex64) -> f64 {
        let (cx, cy) = Self::key(q, self.origin, self.cell);
        // rings beyond the set's own extent plus the query offset cannot help
        let reach = self.span + cx.abs().max(cy.abs()) + 1;
        let mut best = f64::INFINITY;
        let visit = |x: i64, y: i64, best: &mut f64| {
            if let Some(ids) = self.map.get(&(x, y)) {
                for &i in ids {
                    let d = dist2(q, self.points[i]);
                    if d < *best {
                        *best = d;
                    }
                }
            }
        };
        for r in 0..=reach {
            if r == 0 {
                visit(cx, cy, &mut best);
            } else {
                for d in -r..=r {
                    visit(cx + d, cy - r, &mut best);
                    visit(cx + d, cy + r, &mut best);
                }
                for d in -r + 1..r {
                    visit(cx - r, cy + d, &mut best);
                    visit(cx + r, cy + d, &mut best);
                }
            }
            // every point in ring r + 1 or beyond is at least r cells away
            let floor = r as f64 * self.cell;
            if best.is_finite() && floor * floor >= best {
                break;
            }
        }
        best
    }
}

fn directed_brute(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.par_iter()
        .map(|&p| b.iter().map(|&q| dist2(p, q)).fold(f64::INFINITY, f64::min))
        .reduce(|| 0.0, f64::max)
}

fn directed_bucketed(a: &[Complex64], b: &MaskSet) -> f64 {
    let spacing = b.lattice.map(|l| l.h());
    let buckets = Buckets::new(&b.points, spacing);
    a.par_iter().map(|&p| buckets.nearest2(p)).reduce(|| 0.0, f64::max)
}

/// `sup_{a in A} dist(a, B)`.
pub fn directed_hausdorff(a: &MaskSet, b: &MaskSet) -> Result<f64, GeomError> {
    if a.is_empty() {
        return Err(GeomError::EmptySet("first"));
    }
    if b.is_empty() {
        return Err(GeomError::EmptySet("second"));
    }
    let d2 = if a.len().max(b.len()) <= BRUTE_FORCE_LIMIT {
        directed_brute(&a.points, &b.points)
    } else {
        directed_bucketed(&a.points, b)
    };
    Ok(d2.sqrt())
}

/// `max(sup_a dist(a, B), sup_b dist(b, A))` over the lattice points, exact
/// up to the rounding of each Euclidean distance.
pub fn hausdorff_distance(a: &MaskSet, b: &MaskSet) -> Result<f64, GeomError> {
    if a.is_empty() {
        return Err(GeomError::EmptySet("first"));
    }
    if b.is_empty() {
        return Err(GeomError::EmptySet("second"));
    }
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

/// Lattice points of `A`'s lattice within distance `delta` of some member of `A`.
pub fn delta_neighborhood(a: &MaskSet, delta: f64) -> Result<MaskSet, GeomError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(GeomError::Delta(delta));
    }
    let region = a.lattice.ok_or(GeomError::NoLattice)?;
    if a.is_empty() {
        return Ok(MaskSet { points: Vec::new(), lattice: Some(region) });
    }
    let buckets = Buckets::new(&a.points, Some(region.h().max(delta)));
    let d2 = delta * delta;
    let flags: Vec<bool> = (0..region.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = region.coords(idx);
            buckets.nearest2(region.point(i, j)) <= d2
        })
        .collect();
    Ok(MaskSet::from_flags(&region, &flags))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[(f64, f64)]) -> MaskSet {
        MaskSet::from_points(points.iter().map(|&(x, y)| Complex64::new(x, y)).collect())
    }

    #[test]
    fn three_four_five() {
        assert_eq!(hausdorff_distance(&set(&[(0.0, 0.0)]), &set(&[(3.0, 4.0)])).unwrap(), 5.0);
    }

    #[test]
    fn empty_side_is_named() {
        let e = hausdorff_distance(&set(&[(0.0, 0.0)]), &set(&[])).unwrap_err();
        assert_eq!(e, GeomError::EmptySet("second"));
    }

    #[test]
    fn bucketed_matches_brute() {
        let pts: Vec<Complex64> = (0..3000)
            .map(|i| {
                let t = i as f64 * 0.618;
                Complex64::new((t * 7.3).sin() * 3.0, (t * 3.1).cos() * 2.0)
            })
            .collect();
        let a = MaskSet::from_points(pts[..1500].to_vec());
        let b = MaskSet::from_points(pts[1500..].to_vec());
        assert_eq!(directed_brute(&a.points, &b.points), directed_bucketed(&a.points, &b));
        assert_eq!(directed_brute(&b.points, &a.points), directed_bucketed(&b.points, &a));
    }

    #[test]
    fn unit_disc_neighbourhood() {
        let region = GridRegion::new(-2.0, 2.0, -2.0, 2.0, 9, 9).unwrap();
        let mut flags = vec![false; region.len()];
        flags[region.index(4, 4)] = true;
        let a = MaskSet::from_flags(&region, &flags);
        let nb = delta_neighborhood(&a, 1.0).unwrap();
        let expect: Vec<Complex64> = region.points().filter(|z| z.norm_sqr() <= 1.0).collect();
        assert_eq!(nb.points, expect);
        assert_eq!(nb.len(), 13);
    }
}
