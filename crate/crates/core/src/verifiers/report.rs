use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::grid::{GridSummary, SamplingGrid};
use crate::series::DiskPoint;

/// JSON has no infinities; non-finite values travel as "inf", "-inf", "nan".
mod non_finite {
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *x {
            v if v.is_finite() => v.serialize(s),
            v if v.is_nan() => s.serialize_str("nan"),
            v if v > 0.0 => s.serialize_str("inf"),
            _ => s.serialize_str("-inf"),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(de::Error::custom(format!("expected a number, inf, -inf or nan; got {t}"))),
            },
        }
    }
}

/// Outcome of one named check.
///
/// For lower-bound checks `pass` means `extremal_value - tail_slack >= margin`;
/// for upper-bound checks it means `extremal_value + tail_slack <= bound - margin`,
/// with the bound recorded under `params["upper_bound"]`. Composite checks
/// record their gating sub-verdicts in `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub grid: GridSummary,
    #[serde(with = "non_finite")]
    pub extremal_value: f64,
    pub witness: Complex64,
    /// Infinite when the truncation tail is not computable; serialized as "inf".
    #[serde(with = "non_finite")]
    pub tail_slack: f64,
    pub margin: f64,
    pub pass: bool,
    pub heuristic: bool,
}

impl VerificationReport {
    /// Lower-bound report: pass iff `extremal - tail_slack >= margin`.
    pub fn lower_bound(
        check: &str,
        grid: &SamplingGrid,
        extremal_value: f64,
        witness: DiskPoint,
        tail_slack: f64,
    ) -> Self {
        let margin = grid.margin();
        let pass = extremal_value - tail_slack >= margin;
        Self {
            check: check.to_string(),
            params: BTreeMap::new(),
            grid: grid.summary(),
            extremal_value,
            witness: witness.z(),
            tail_slack,
            margin,
            pass,
            heuristic: false,
        }
        .with_param("sense", "min")
    }

    /// Upper-bound report: pass iff `extremal + tail_slack <= bound - margin`.
    pub fn upper_bound(
        check: &str,
        grid: &SamplingGrid,
        bound: f64,
        extremal_value: f64,
        witness: DiskPoint,
        tail_slack: f64,
    ) -> Self {
        let margin = grid.margin();
        let pass = extremal_value + tail_slack <= bound - margin;
        Self {
            check: check.to_string(),
            params: BTreeMap::new(),
            grid: grid.summary(),
            extremal_value,
            witness: witness.z(),
            tail_slack,
            margin,
            pass,
            heuristic: false,
        }
        .with_param("sense", "max")
        .with_param("upper_bound", bound)
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_complex(self, key: &str, w: Complex64) -> Self {
        self.with_param(key, vec![w.re, w.im])
    }

    pub fn heuristic(mut self) -> Self {
        self.heuristic = true;
        self
    }

    /// Pretty JSON; keys inside `params` are sorted, so output is
    /// byte-identical across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}
