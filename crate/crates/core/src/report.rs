//! Machine-readable reports shared by the command-line tool and the examples.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Stable identifier of the mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results: Value::Null,
            checks: Vec::new(),
        }
    }

    /// Record a boolean check; on failure both values are kept.
    pub fn check(&mut self, name: &str, anchor: &str, pass: bool, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        self.checks.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: if pass {
                observed.clone()
            } else {
                format!("expected {expected}, observed {observed}")
            },
            expected: (!pass).then_some(expected),
            observed: (!pass).then_some(observed),
        });
    }

    /// Record `expected == observed`.
    pub fn check_eq<T: PartialEq + std::fmt::Display>(&mut self, name: &str, anchor: &str, expected: T, observed: T) {
        let pass = expected == observed;
        self.check(name, anchor, pass, expected, observed);
    }

    pub fn skip(&mut self, name: &str, anchor: &str, reason: &str) {
        self.checks.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            detail: reason.into(),
            expected: None,
            observed: None,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {} ({}): {}\n", c.name, c.anchor, c.detail));
        }
        out
    }
}
