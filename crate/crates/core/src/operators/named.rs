use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    AlphaRule, BlockShape, DiagBlockFamily, Direction, OperatorError, OperatorModel, OperatorSequence, SequenceKind,
    SymbolSpec,
};
use crate::numkernel::ComplexMatrix;

pub const EXAMPLE_NAMES: [&str; 6] = ["diag_pair", "shargorodsky", "empty_resolvent", "nonconstant", "decay", "remark_n1"];

/// Smallest reference truncation used as a stand-in for an infinite limit.
pub const DEFAULT_REFERENCE_N: usize = 256;

/// JSON configuration of a named example. Unused keys for a given name are
/// ignored; invalid values are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleParams {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_rule: Option<AlphaRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl ExampleParams {
    pub fn named(name: &str) -> Self {
        Self { name: name.to_string(), ..Self::default() }
    }

    pub fn from_json(text: &str) -> Result<Self, OperatorError> {
        serde_json::from_str(text).map_err(|e| OperatorError::Config(format!("bad example config: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedExample {
    pub name: String,
    /// The limit operator.
    pub model: OperatorModel,
    /// Approximating sequence: `diag((1 - 1/k) l1, l2)` for `diag_pair`,
    /// leading truncations for the block families.
    pub sequence: OperatorSequence,
    pub epsilon: Option<f64>,
}

impl NamedExample {
    pub fn family(&self) -> Option<&DiagBlockFamily> {
        match &self.model {
            OperatorModel::BlockFamily { family } => Some(family),
            _ => None,
        }
    }
}

fn unknown(name: &str) -> OperatorError {
    OperatorError::Config(format!("unknown example '{name}'; valid names: {}", EXAMPLE_NAMES.join(", ")))
}

fn family_example(
    params: &ExampleParams,
    symbol: SymbolSpec,
    shape: BlockShape,
) -> Result<NamedExample, OperatorError> {
    let alpha = params.alpha_rule.clone().unwrap_or_default();
    let family = DiagBlockFamily::new(alpha, symbol, shape).map_err(|e| match e {
        OperatorError::Config(msg) => OperatorError::Config(format!("{}: {msg}", params.name)),
        other => other,
    })?;
    let family = match params.name.as_str() {
        "shargorodsky" | "remark_n1" => family.with_m_hint(0.0),
        _ => family,
    };
    Ok(NamedExample {
        name: params.name.clone(),
        model: OperatorModel::block_family(family.clone()),
        sequence: OperatorSequence::new(
            SequenceKind::Truncation { family, reference_n: DEFAULT_REFERENCE_N },
            Complex64::i(),
        ),
        epsilon: params.epsilon,
    })
}

/// Builds one of [`EXAMPLE_NAMES`].
///
/// * `diag_pair`: `diag(lambda1, lambda2)` (defaults 2 and 6) with `T_k = diag((1 - 1/k) lambda1, lambda2)`.
/// * `shargorodsky`: `f = 1 + 1/x`, `C = 1`.
/// * `empty_resolvent`: `f = 1/x`, `C = 0`.
/// * `nonconstant`: `f = 1 - 1/sqrt(x)`, `C = 1`.
/// * `decay`: `f = x^beta` (default `beta = 1/2`), `C = inf`.
/// * `remark_n1`: 4x4 blocks with `b_k = 1 + 1/a_k`.
///
/// Families use `alpha_k = k + 1` unless `alpha_rule` is given.
pub fn build_named_example(params: &ExampleParams) -> Result<NamedExample, OperatorError> {
    if let Some(eps) = params.epsilon {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(OperatorError::Config(format!("epsilon must be positive, got {eps}")));
        }
    }
    match params.name.as_str() {
        "diag_pair" => {
            let l1 = params.lambda1.unwrap_or(2.0);
            let l2 = params.lambda2.unwrap_or(6.0);
            if !(l1.is_finite() && l2.is_finite()) || l1 == l2 {
                return Err(OperatorError::Config(format!("diag_pair needs distinct finite eigenvalues, got {l1}, {l2}")));
            }
            let matrix = ComplexMatrix::from_diag(&[Complex64::new(l1, 0.0), Complex64::new(l2, 0.0)]);
            Ok(NamedExample {
                name: params.name.clone(),
                model: OperatorModel::Dense { matrix },
                sequence: OperatorSequence::new(
                    SequenceKind::DiagPair { lambda1: l1, lambda2: l2, direction: Direction::Shrink },
                    Complex64::i(),
                ),
                epsilon: params.epsilon,
            })
        }
        "shargorodsky" => family_example(params, SymbolSpec::OnePlusInv, BlockShape::TwoByTwo),
        "empty_resolvent" => family_example(params, SymbolSpec::Inverse, BlockShape::TwoByTwo),
        "nonconstant" => family_example(params, SymbolSpec::OneMinusInvSqrt, BlockShape::TwoByTwo),
        "decay" => {
            let beta = params.beta.unwrap_or(0.5);
            family_example(params, SymbolSpec::PowerBeta { beta }, BlockShape::TwoByTwo)
        }
        "remark_n1" => family_example(params, SymbolSpec::OnePlusInv, BlockShape::FourByFour),
        other => Err(unknown(other)),
    }
}

/// Shorthand for `build_named_example(&ExampleParams::named(name))`.
pub fn named_example(name: &str) -> Result<NamedExample, OperatorError> {
    build_named_example(&ExampleParams::named(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds() {
        for name in EXAMPLE_NAMES {
            let ex = named_example(name).unwrap();
            assert_eq!(ex.name, name);
        }
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = named_example("nope").unwrap_err().to_string();
        for name in EXAMPLE_NAMES {
            assert!(err.contains(name));
        }
    }

    #[test]
    fn decay_rejects_beta_out_of_range() {
        let p = ExampleParams { beta: Some(1.5), ..ExampleParams::named("decay") };
        assert!(build_named_example(&p).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name":"decay","beta":0.5,"alpha_rule":{"rule":"log_grid","min":1.0,"max":100000.0,"points":2000}}"#;
        let p = ExampleParams::from_json(text).unwrap();
        assert_eq!(p.beta, Some(0.5));
        let back = ExampleParams::from_json(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(ExampleParams::from_json(r#"{"name":"decay","gamma":1}"#).is_err());
    }

    #[test]
    fn declared_tails_match_far_samples() {
        for name in ["shargorodsky", "nonconstant", "empty_resolvent", "remark_n1"] {
            let fam = named_example(name).unwrap().family().unwrap().clone();
            assert!((fam.weight(1_000_000) - fam.tail_c).abs() < 1e-2, "{name}");
        }
    }
}
