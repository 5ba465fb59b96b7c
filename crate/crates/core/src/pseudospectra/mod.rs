//! Resolvent-norm fields on rectangular lattices, level sets for the open
//! and closed pseudospectra, and a lattice check that the closed level set is
//! the closure of the open one.

mod csvio;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::operators::OperatorModel;
use crate::resolvent::resolvent_power_norm;

pub use csvio::{read_field_csv, read_mask_csv, write_field_csv, write_mask_csv};

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid region: {0}")]
    Region(String),
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// Lattice on `[re_min, re_max] x [im_min, im_max]` with `nx * ny` points.
/// Point `(i, j)` sits at `re_min + (re_max - re_min) i / (nx - 1)` (same in
/// the imaginary direction), so both edges are hit exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Lattice size used when no resolution is requested.
pub const DEFAULT_GRID_POINTS: usize = 101;

impl GridRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self, GridError> {
        let r = Self { re_min, re_max, im_min, im_max, nx, ny };
        r.validate()?;
        Ok(r)
    }

    /// Region whose lattice spacing is `h` in both directions (rounded to the
    /// nearest count that fits the window).
    pub fn with_spacing(re_min: f64, re_max: f64, im_min: f64, im_max: f64, h: f64) -> Result<Self, GridError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(GridError::Region(format!("spacing must be positive, got {h}")));
        }
        let nx = ((re_max - re_min) / h).round() as usize + 1;
        let ny = ((im_max - im_min) / h).round() as usize + 1;
        Self::new(re_min, re_max, im_min, im_max, nx, ny)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite {
            return Err(GridError::Region("bounds must be finite".into()));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(GridError::Region(format!(
                "need re_min < re_max and im_min < im_max, got [{}, {}] x [{}, {}]",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(GridError::Region(format!("need at least 2 points per axis, got {}x{}", self.nx, self.ny)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hx(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    /// Larger of the two spacings.
    pub fn h(&self) -> f64 {
        self.hx().max(self.hy())
    }

    pub fn re(&self, i: usize) -> f64 {
        self.re_min + (self.re_max - self.re_min) * i as f64 / (self.nx - 1) as f64
    }

    pub fn im(&self, j: usize) -> f64 {
        self.im_min + (self.im_max - self.im_min) * j as f64 / (self.ny - 1) as f64
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re(i), self.im(j))
    }

    /// Flat index, row-major with the real part varying fastest.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(move |idx| {
            let (i, j) = self.coords(idx);
            self.point(i, j)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormField {
    pub region: GridRegion,
    pub n: u32,
    /// `||(T - z)^(-2^n)||^(1/2^n)` per lattice point, indexed by [`GridRegion::index`].
    pub values: Vec<f64>,
}

impl NormField {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.region.index(i, j)]
    }

    /// Smallest value and its lattice point.
    pub fn argmin(&self) -> (f64, Complex64) {
        let (idx, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        let (i, j) = self.region.coords(idx);
        (v, self.region.point(i, j))
    }

    pub fn max_abs_deviation(&self, target: f64) -> f64 {
        self.values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max)
    }
}

/// Evaluates the power norm at every lattice point, in parallel; each value
/// depends only on `(model, z, n)`.
pub fn compute_norm_field(model: &OperatorModel, region: &GridRegion, n: u32) -> NormField {
    let values = (0..region.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = region.coords(idx);
            resolvent_power_norm(model, region.point(i, j), n).value
        })
        .collect();
    NormField { region: *region, n, values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    /// `value > 1/eps`
    OpenSigma,
    /// `value >= 1/eps`
    ClosedSigma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSetMask {
    pub region: GridRegion,
    pub epsilon: f64,
    pub n: u32,
    pub strictness: Strictness,
    pub mask: Vec<bool>,
}

impl LevelSetMask {
    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_subset_of(&self, other: &LevelSetMask) -> bool {
        self.mask.len() == other.mask.len() && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn member_points(&self) -> Vec<Complex64> {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(idx, _)| {
                let (i, j) = self.region.coords(idx);
                self.region.point(i, j)
            })
            .collect()
    }

    /// Cells within one step (8-neighbourhood) of a member.
    pub fn dilated(&self) -> Vec<bool> {
        dilate(&self.region, &self.mask)
    }
}

fn dilate(region: &GridRegion, mask: &[bool]) -> Vec<bool> {
    let (nx, ny) = (region.nx as isize, region.ny as isize);
    let mut out = vec![false; mask.len()];
    for j in 0..ny {
        for i in 0..nx {
            if !mask[(j * nx + i) as usize] {
                continue;
            }
            for dj in -1..=1 {
                for di in -1..=1 {
                    let (a, b) = (i + di, j + dj);
                    if a >= 0 && a < nx && b >= 0 && b < ny {
                        out[(b * nx + a) as usize] = true;
                    }
                }
            }
        }
    }
    out
}

/// Level set `{value > 1/eps}` or `{value >= 1/eps}`; infinite values are
/// members of both.
pub fn level_set(field: &NormField, epsilon: f64, strictness: Strictness) -> Result<LevelSetMask, GridError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(GridError::Epsilon(epsilon));
    }
    let level = 1.0 / epsilon;
    let mask = field
        .values
        .iter()
        .map(|&v| match strictness {
            Strictness::OpenSigma => v > level,
            Strictness::ClosedSigma => v >= level,
        })
        .collect();
    Ok(LevelSetMask { region: field.region, epsilon, n: field.n, strictness, mask })
}

/// Lattice closure of the open level set restricted to the window: closed
/// members that lie within one cell of an open member.
pub fn closure_of_open(field: &NormField, epsilon: f64) -> Result<LevelSetMask, GridError> {
    let open = level_set(field, epsilon, Strictness::OpenSigma)?;
    let mut closed = level_set(field, epsilon, Strictness::ClosedSigma)?;
    let near = open.dilated();
    for (m, n) in closed.mask.iter_mut().zip(near) {
        *m = *m && n;
    }
    Ok(closed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub holds_at_resolution: bool,
    /// First closed-set cell (row-major) with no open-set cell among its neighbours.
    pub witness: Option<(usize, usize)>,
    pub witness_point: Option<Complex64>,
    /// Lattice spacing the verdict refers to.
    pub h: f64,
}

/// Lattice version of "the closure of the open level set meets the window in
/// the same set as the closure of its intersection with the window, and that
/// set is nonempty": every closed-set cell must have an open-set cell within
/// one step (8-neighbourhood), and the closed set must be nonempty.
pub fn assumption_i_check(field: &NormField, epsilon: f64) -> Result<AssumptionCheck, GridError> {
    let open = level_set(field, epsilon, Strictness::OpenSigma)?;
    let closed = level_set(field, epsilon, Strictness::ClosedSigma)?;
    let h = field.region.h();
    if closed.count() == 0 {
        return Ok(AssumptionCheck { holds_at_resolution: false, witness: None, witness_point: None, h });
    }
    let near = open.dilated();
    let bad = closed.mask.iter().zip(&near).position(|(&c, &d)| c && !d);
    Ok(match bad {
        None => AssumptionCheck { holds_at_resolution: true, witness: None, witness_point: None, h },
        Some(idx) => {
            let (i, j) = field.region.coords(idx);
            AssumptionCheck {
                holds_at_resolution: false,
                witness: Some((i, j)),
                witness_point: Some(field.region.point(i, j)),
                h,
            }
        }
    })
}
