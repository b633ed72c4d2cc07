//! Verdict and report records shared by every check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `lhs ≤ rhs` up to `tol`. `slack = rhs − lhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl InequalityCheck {
    pub fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        Self { lhs, rhs, slack: rhs - lhs, pass: lhs <= rhs + tol }
    }

    /// Same numbers, but pass only when `lhs < rhs`.
    pub fn strict(mut self) -> Self {
        self.pass = self.lhs < self.rhs;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_violation: f64,
    pub samples_checked: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    #[serde(flatten)]
    pub check: InequalityCheck,
}

/// Raster measurements kept apart from the inequality verdicts drawn from them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub name: String,
    pub measured: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl ConstructionReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    pub fn measure(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.measured.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn verdict(&mut self, name: &str, check: InequalityCheck) -> &mut Self {
        self.verdicts.push(Verdict { name: name.to_string(), check });
        self
    }

    /// A yes/no verdict, recorded as `lhs = 0 ≤ rhs = 1` on success.
    pub fn flag(&mut self, name: &str, ok: bool) -> &mut Self {
        let check = InequalityCheck { lhs: if ok { 0.0 } else { 1.0 }, rhs: 0.0, slack: if ok { 0.0 } else { -1.0 }, pass: ok };
        self.verdict(name, check)
    }

    pub fn get(&self, name: &str) -> Option<&InequalityCheck> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| &v.check)
    }

    pub fn measured_f64(&self, key: &str) -> Option<f64> {
        self.measured.get(key).and_then(Value::as_f64)
    }

    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.check.pass)
    }
}
