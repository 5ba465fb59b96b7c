use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ExperimentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// Tolerance terms a verdict depends on.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proxy_n_ref: Option<usize>,
    /// Study-specific acceptance tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Outcome of a study. Infinite values serialize as JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub study: String,
    pub params: BTreeMap<String, Value>,
    /// `(k or r, measured value)` pairs.
    pub series: Vec<(f64, f64)>,
    pub verdict: Verdict,
    pub budget: Budget,
    /// Further named series, e.g. defects alongside distances.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra_series: BTreeMap<String, Vec<(f64, f64)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl StudyReport {
    pub fn new(study: &str) -> Self {
        Self {
            study: study.to_string(),
            params: BTreeMap::new(),
            series: Vec::new(),
            verdict: Verdict::Fail,
            budget: Budget::default(),
            extra_series: BTreeMap::new(),
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn series_values(&self) -> Vec<f64> {
        self.series.iter().map(|p| p.1).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `x,value` rows of the main series.
    pub fn write_series_csv<W: Write>(&self, out: W) -> Result<(), ExperimentError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "value"]).map_err(csv_err)?;
        for &(x, v) in &self.series {
            let v = if v == f64::INFINITY { "inf".to_string() } else { v.to_string() };
            w.write_record([x.to_string(), v]).map_err(csv_err)?;
        }
        w.flush().map_err(|e| ExperimentError::Io(e.to_string()))?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> ExperimentError {
    ExperimentError::Io(e.to_string())
}
