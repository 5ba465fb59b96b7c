use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{OperatorError, SymbolSpec};
use crate::numkernel::ComplexMatrix;

/// Index sampled when checking that `alpha_k` is unbounded and that the
/// symbol settles at its declared limit.
pub const VALIDATION_INDEX: usize = 1_000_000;

/// Rule `k -> alpha_k` for `k >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum AlphaRule {
    /// `alpha_k = offset + slope * k`.
    Affine { offset: f64, slope: f64 },
    /// `points` log-spaced values from `min` to `max`, continued with the same
    /// ratio past `k = points`.
    LogGrid { min: f64, max: f64, points: usize },
}

impl Default for AlphaRule {
    /// `alpha_k = k + 1`.
    fn default() -> Self {
        AlphaRule::Affine { offset: 1.0, slope: 1.0 }
    }
}

impl AlphaRule {
    pub fn alpha(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match *self {
            AlphaRule::Affine { offset, slope } => offset + slope * k as f64,
            AlphaRule::LogGrid { min, max, points } => {
                if k == points {
                    return max;
                }
                let t = (k - 1) as f64 / (points - 1) as f64;
                (min.ln() + t * (max / min).ln()).exp()
            }
        }
    }

    pub fn validate(&self) -> Result<(), OperatorError> {
        let ok = match *self {
            AlphaRule::Affine { offset, slope } => {
                offset.is_finite() && slope.is_finite() && slope > 0.0 && offset + slope > 0.0
            }
            AlphaRule::LogGrid { min, max, points } => min.is_finite() && max.is_finite() && min > 0.0 && max > min && points >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(OperatorError::Config(format!("invalid alpha rule {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockShape {
    TwoByTwo,
    FourByFour,
}

impl BlockShape {
    pub fn size(self) -> usize {
        match self {
            BlockShape::TwoByTwo => 2,
            BlockShape::FourByFour => 4,
        }
    }
}

/// Infinite block-diagonal operator `diag(B_1, B_2, ...)`.
///
/// Two-by-two blocks are `[[0, f(a_k)], [a_k, 0]]`. Four-by-four blocks, with
/// `b_k = f(a_k)`, map `e1 -> a e3`, `e2 -> b e4`, `e3 -> a e2`, `e4 -> b e1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagBlockFamily {
    pub alpha: AlphaRule,
    pub symbol: SymbolSpec,
    /// Limit of `f(alpha_k)`; `inf` is written to JSON as `null`.
    #[serde(deserialize_with = "null_as_infinity")]
    pub tail_c: f64,
    pub shape: BlockShape,
    /// Constant `m` in `f(a_k)^2 >= C^2 - m / a_k`, when known.
    pub m_hint: Option<f64>,
}

impl DiagBlockFamily {
    /// Family with `tail_c` taken from the symbol's limit. Validates.
    pub fn new(alpha: AlphaRule, symbol: SymbolSpec, shape: BlockShape) -> Result<Self, OperatorError> {
        let tail_c = symbol.tail_limit();
        let fam = Self { alpha, symbol, tail_c, shape, m_hint: None };
        fam.validate()?;
        Ok(fam)
    }

    pub fn with_m_hint(mut self, m: f64) -> Self {
        self.m_hint = Some(m);
        self
    }

    pub fn alpha(&self, k: usize) -> f64 {
        self.alpha.alpha(k)
    }

    /// `f(alpha_k)`.
    pub fn weight(&self, k: usize) -> f64 {
        self.symbol.eval(self.alpha(k))
    }

    pub fn validate(&self) -> Result<(), OperatorError> {
        self.alpha.validate()?;
        self.symbol.validate()?;
        if self.tail_c.is_nan() || self.tail_c < 0.0 {
            return Err(OperatorError::Config(format!("tail constant must be in [0, inf], got {}", self.tail_c)));
        }
        let mut prev = 0.0;
        let mut k = 1usize;
        while k <= VALIDATION_INDEX {
            let a = self.alpha(k);
            if !(a > 0.0) || a < prev {
                return Err(OperatorError::Config(format!("alpha must be positive and nondecreasing (k = {k})")));
            }
            let f = self.symbol.eval(a);
            if !(f > 0.0) {
                return Err(OperatorError::Config(format!("symbol must be positive on the alpha range (k = {k}, f = {f})")));
            }
            prev = a;
            k = if k < 64 { k + 1 } else { k * 2 };
        }
        let far = self.alpha(VALIDATION_INDEX);
        if !(far > 1e3) {
            return Err(OperatorError::Config(format!("alpha must be unbounded, alpha at k = 1e6 is {far}")));
        }
        let declared = self.symbol.tail_limit();
        let consistent = if declared.is_finite() {
            (declared - self.tail_c).abs() < 1e-2 && (self.symbol.eval(far) - self.tail_c).abs() < 1e-2
        } else {
            self.tail_c == f64::INFINITY
        };
        if !consistent {
            return Err(OperatorError::Config(format!(
                "tail constant {} does not match the symbol limit {declared}",
                self.tail_c
            )));
        }
        if self.shape == BlockShape::FourByFour && !(self.tail_c.is_finite() && self.tail_c > 0.0) {
            return Err(OperatorError::Config("4x4 families need a finite positive tail constant".into()));
        }
        Ok(())
    }

    pub fn block(&self, k: usize) -> ComplexMatrix {
        let a = self.alpha(k);
        let f = self.symbol.eval(a);
        match self.shape {
            BlockShape::TwoByTwo => ComplexMatrix::from_real_rows(&[&[0.0, f], &[a, 0.0]]),
            BlockShape::FourByFour => four_block(a, f),
        }
    }

    /// `diag(B_1, ..., B_n)` as a dense matrix.
    pub fn truncation(&self, n: usize) -> Result<ComplexMatrix, OperatorError> {
        assemble_truncation(self, n)
    }
}

fn null_as_infinity<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

pub(crate) fn four_block(a: f64, b: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, b],
        &[0.0, 0.0, a, 0.0],
        &[a, 0.0, 0.0, 0.0],
        &[0.0, b, 0.0, 0.0],
    ])
}

/// Leading truncation `diag(B_1, ..., B_n)`, of size `s n` with `s` the block size.
pub fn assemble_truncation(family: &DiagBlockFamily, n: usize) -> Result<ComplexMatrix, OperatorError> {
    if n == 0 {
        return Err(OperatorError::Domain("truncation size must be at least 1".into()));
    }
    let s = family.shape.size();
    let mut m = ComplexMatrix::zeros(s * n, s * n);
    for k in 1..=n {
        let b = family.block(k);
        let off = (k - 1) * s;
        for i in 0..s {
            for j in 0..s {
                let v = b[(i, j)];
                if v != Complex64::new(0.0, 0.0) {
                    m[(off + i, off + j)] = v;
                }
            }
        }
    }
    Ok(m)
}

/// Whether `f(alpha_k)^2 >= C^2 - m / alpha_k` for every `1 <= k <= k_max`.
pub fn check_tail_deficit_condition(family: &DiagBlockFamily, m: f64, k_max: usize) -> Result<bool, OperatorError> {
    let c = family.tail_c;
    if !(c.is_finite() && c > 0.0) {
        return Err(OperatorError::Inapplicable(format!(
            "the deficit condition needs a finite positive tail constant, got {c}"
        )));
    }
    Ok(first_deficit_violation(family, m, k_max)?.is_none())
}

/// First `k <= k_max` at which `f(alpha_k)^2 < C^2 - m / alpha_k`.
pub fn first_deficit_violation(family: &DiagBlockFamily, m: f64, k_max: usize) -> Result<Option<usize>, OperatorError> {
    let c = family.tail_c;
    if !(c.is_finite() && c > 0.0) {
        return Err(OperatorError::Inapplicable(format!("tail constant {c} is not finite and positive")));
    }
    Ok((1..=k_max).find(|&k| {
        let a = family.alpha(k);
        family.symbol.eval(a).powi(2) < c * c - m / a
    }))
}
