use serde::{Deserialize, Serialize};

use super::OperatorError;

/// The function `f` placed in the upper-right corner of each 2x2 block
/// `[[0, f(a)], [a, 0]]` (or used as the second weight of 4x4 blocks).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolSpec {
    /// `1 + 1/x`, tends to 1 from above.
    OnePlusInv,
    /// `1 - 1/sqrt(x)`, tends to 1 from below; needs `x > 1`.
    OneMinusInvSqrt,
    /// `1/x`, tends to 0.
    Inverse,
    /// `x^beta` with `beta` in (0, 1), unbounded.
    PowerBeta { beta: f64 },
    Constant { c: f64 },
    /// Piecewise-linear interpolation through `(x, f(x))` pairs, held constant
    /// outside the table.
    Tabulated { table: Vec<(f64, f64)> },
}

/// Envelope for the deficit `C^2 - f(a)^2 <= sqrt_coeff * a^{-1/2} + linear_coeff * a^{-1}`
/// valid for every `a` at or beyond some threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficitBound {
    pub sqrt_coeff: f64,
    pub linear_coeff: f64,
}

impl SymbolSpec {
    pub fn validate(&self) -> Result<(), OperatorError> {
        match self {
            SymbolSpec::PowerBeta { beta } if !(*beta > 0.0 && *beta < 1.0) => Err(OperatorError::Config(
                format!("power_beta needs beta in (0, 1), got {beta}"),
            )),
            SymbolSpec::Constant { c } if !(c.is_finite() && *c > 0.0) => {
                Err(OperatorError::Config(format!("constant symbol needs c > 0, got {c}")))
            }
            SymbolSpec::Tabulated { table } => {
                if table.is_empty() {
                    return Err(OperatorError::Config("tabulated symbol needs at least one point".into()));
                }
                if table.windows(2).any(|w| !(w[0].0 < w[1].0)) {
                    return Err(OperatorError::Config("tabulated x values must be strictly increasing".into()));
                }
                if table.iter().any(|&(x, y)| !x.is_finite() || !(y.is_finite() && y > 0.0)) {
                    return Err(OperatorError::Config("tabulated values must be finite and positive".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            SymbolSpec::OnePlusInv => 1.0 + 1.0 / x,
            SymbolSpec::OneMinusInvSqrt => 1.0 - 1.0 / x.sqrt(),
            SymbolSpec::Inverse => 1.0 / x,
            SymbolSpec::PowerBeta { beta } => x.powf(*beta),
            SymbolSpec::Constant { c } => *c,
            SymbolSpec::Tabulated { table } => {
                let first = table[0];
                let last = table[table.len() - 1];
                if x <= first.0 {
                    return first.1;
                }
                if x >= last.0 {
                    return last.1;
                }
                let i = table.partition_point(|p| p.0 <= x);
                let (x0, y0) = table[i - 1];
                let (x1, y1) = table[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// `lim_{x -> inf} f(x)`, possibly infinite.
    pub fn tail_limit(&self) -> f64 {
        match self {
            SymbolSpec::OnePlusInv | SymbolSpec::OneMinusInvSqrt => 1.0,
            SymbolSpec::Inverse => 0.0,
            SymbolSpec::PowerBeta { .. } => f64::INFINITY,
            SymbolSpec::Constant { c } => *c,
            SymbolSpec::Tabulated { table } => table[table.len() - 1].1,
        }
    }

    /// `(inf, sup)` of `f` over `[a0, inf)`.
    pub fn tail_range(&self, a0: f64) -> (f64, f64) {
        let fa = self.eval(a0);
        match self {
            SymbolSpec::Tabulated { table } => {
                let mut lo = fa;
                let mut hi = fa;
                for &(x, y) in table.iter().filter(|p| p.0 > a0) {
                    lo = lo.min(y);
                    hi = hi.max(y);
                    let _ = x;
                }
                (lo, hi)
            }
            _ => {
                let c = self.tail_limit();
                (fa.min(c), fa.max(c))
            }
        }
    }

    /// Whether `f(a) <= a` for every `a >= a0`.
    pub fn dominated_by_identity(&self, a0: f64) -> bool {
        match self {
            SymbolSpec::PowerBeta { .. } => a0 >= 1.0,
            _ => self.tail_range(a0).1 <= a0,
        }
    }

    /// Deficit envelope on `[a0, inf)` when the limit `C` is finite and positive.
    pub fn deficit_bound(&self, a0: f64) -> Option<DeficitBound> {
        match self {
            // C^2 - f^2 = -2/a - 1/a^2
            SymbolSpec::OnePlusInv => Some(DeficitBound { sqrt_coeff: 0.0, linear_coeff: -2.0 }),
            // C^2 - f^2 = 2/sqrt(a) - 1/a
            SymbolSpec::OneMinusInvSqrt => Some(DeficitBound { sqrt_coeff: 2.0, linear_coeff: -1.0 }),
            SymbolSpec::Constant { .. } => Some(DeficitBound { sqrt_coeff: 0.0, linear_coeff: 0.0 }),
            SymbolSpec::Tabulated { table } if a0 >= table[table.len() - 1].0 => {
                Some(DeficitBound { sqrt_coeff: 0.0, linear_coeff: 0.0 })
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluations() {
        assert_eq!(SymbolSpec::OnePlusInv.eval(2.0), 1.5);
        assert_eq!(SymbolSpec::OneMinusInvSqrt.eval(4.0), 0.5);
        assert_eq!(SymbolSpec::Inverse.eval(4.0), 0.25);
        assert_eq!(SymbolSpec::PowerBeta { beta: 0.5 }.eval(16.0), 4.0);
        let t = SymbolSpec::Tabulated { table: vec![(1.0, 2.0), (3.0, 4.0)] };
        assert_eq!(t.eval(0.0), 2.0);
        assert_eq!(t.eval(2.0), 3.0);
        assert_eq!(t.eval(10.0), 4.0);
        assert_eq!(t.tail_limit(), 4.0);
    }

    #[test]
    fn deficit_bounds_hold_on_samples() {
        for sym in [SymbolSpec::OnePlusInv, SymbolSpec::OneMinusInvSqrt] {
            let d = sym.deficit_bound(2.0).unwrap();
            for k in 1..2000 {
                let a = 2.0 + k as f64 * 0.37;
                let deficit = 1.0 - sym.eval(a).powi(2);
                let bound = d.sqrt_coeff / a.sqrt() + d.linear_coeff / a;
                assert!(deficit <= bound + 1e-15, "{sym:?} at {a}");
            }
        }
    }

    #[test]
    fn tail_ranges() {
        assert_eq!(SymbolSpec::OnePlusInv.tail_range(4.0), (1.0, 1.25));
        assert_eq!(SymbolSpec::OneMinusInvSqrt.tail_range(4.0), (0.5, 1.0));
        let (lo, hi) = SymbolSpec::PowerBeta { beta: 0.5 }.tail_range(4.0);
        assert_eq!((lo, hi), (2.0, f64::INFINITY));
        assert!(SymbolSpec::PowerBeta { beta: 0.5 }.dominated_by_identity(1.0));
        assert!(!SymbolSpec::OnePlusInv.dominated_by_identity(1.0));
        assert!(SymbolSpec::OnePlusInv.dominated_by_identity(2.0));
    }

    #[test]
    fn validation() {
        assert!(SymbolSpec::PowerBeta { beta: 1.0 }.validate().is_err());
        assert!(SymbolSpec::Constant { c: 0.0 }.validate().is_err());
        assert!(SymbolSpec::Tabulated { table: vec![(2.0, 1.0), (1.0, 1.0)] }.validate().is_err());
    }
}
