//! The `report/1` JSON schema.

use serde::Serialize;
use serde_json::Value;

use crate::euclid::Constants;

pub const SCHEMA: &str = "report/1";

/// One checked inequality `measured <= bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    /// The constant the bound comes from, e.g. `C` or `9L+6`.
    pub constant: String,
    pub bound: f64,
    pub measured: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Assertion {
    pub fn at_most(name: &str, constant: &str, measured: f64, bound: f64, tol: f64) -> Self {
        Assertion {
            name: name.into(),
            constant: constant.into(),
            bound,
            measured,
            passed: measured <= bound + tol,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Serialize) -> Self {
        self.witness = serde_json::to_value(w).ok();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskRecord {
    pub name: String,
    pub kind: String,
    pub inputs: Value,
    pub outputs: Value,
    pub assertions: Vec<Assertion>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub scenario: String,
    pub seed: u64,
    pub constants: Constants,
    pub tolerance: f64,
    pub complex: Value,
    pub tasks: Vec<TaskRecord>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for t in &mut r.tasks {
            t.wall_ms = 0.0;
        }
        r
    }
}
