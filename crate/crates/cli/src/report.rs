use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub expected: String,
    pub got: String,
}

/// Outcome of a sweep or golden reproduction. Passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub group: String,
    pub instances_checked: u64,
    pub failures: Vec<Failure>,
    /// Number of failures found; `failures` may hold only the first few.
    pub failure_count: u64,
    pub elapsed_secs: f64,
    pub truncated_any: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

/// Failures kept verbatim in a report.
pub const MAX_LISTED: usize = 25;

impl CheckReport {
    pub fn new(check_name: impl Into<String>, group: impl Into<String>) -> Self {
        Self {
            check_name: check_name.into(),
            group: group.into(),
            instances_checked: 0,
            failures: Vec::new(),
            failure_count: 0,
            elapsed_secs: 0.0,
            truncated_any: false,
            seed: None,
            details: serde_json::Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn fail(&mut self, inputs: Vec<String>, expected: impl Into<String>, got: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(Failure { inputs, expected: expected.into(), got: got.into() });
        }
    }

    /// Compares two printable values, recording a failure when they differ.
    pub fn expect_eq<T: std::fmt::Debug + PartialEq>(&mut self, what: &str, expected: T, got: T) {
        self.instances_checked += 1;
        if expected != got {
            self.fail(vec![what.to_string()], format!("{expected:?}"), format!("{got:?}"));
        }
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.elapsed_secs = elapsed.as_secs_f64();
        self
    }

    /// Exit status: 0 pass, 1 failures, 3 truncated without failures.
    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            1
        } else if self.truncated_any {
            3
        } else {
            0
        }
    }
}
