//! Results of sampled property checks.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Accumulates check outcomes and keeps the first failure.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks_run: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Records one check. The closure builds `(inputs, expected, got)` and
    /// only runs on failure.
    pub fn ensure<F>(&mut self, check: &str, ok: bool, detail: F) -> bool
    where
        F: FnOnce() -> (String, String, String),
    {
        self.checks_run += 1;
        if !ok && self.counterexample.is_none() {
            let (inputs, expected, got) = detail();
            self.counterexample = Some(Counterexample {
                check: check.to_string(),
                inputs,
                expected,
                got,
            });
        }
        ok
    }

    /// Records a check that could not run because of an error.
    pub fn error(&mut self, check: &str, inputs: String, err: &crate::Error) {
        self.ensure(check, false, || {
            (inputs, "no error".into(), err.to_string())
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks_run += other.checks_run;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}
