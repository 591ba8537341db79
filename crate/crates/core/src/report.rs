//! Machine-readable verification reports.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;

/// Most witnesses or counterexamples a report carries.
pub const LIST_CAP: usize = 16;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// An exact value, serialized as `{"num": k, "den": n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalValue {
    pub num: u64,
    pub den: u64,
}

impl From<Ratio<u64>> for RationalValue {
    fn from(r: Ratio<u64>) -> Self {
        RationalValue {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<RationalValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub examined: Option<u64>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Value>,
    pub counterexamples: Vec<Value>,
    pub counterexamples_total: u64,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        VerificationReport {
            command: command.into(),
            parameters: BTreeMap::new(),
            passed: true,
            value: None,
            real_value: None,
            examined: None,
            checks: Vec::new(),
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            counterexamples_total: 0,
            notes: Vec::new(),
            details: Value::Null,
            seed: None,
            tool_version: TOOL_VERSION.to_owned(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    /// Records a named check; a failing check fails the report.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
        self.passed &= passed;
        passed
    }

    pub fn witness(&mut self, w: impl Serialize) {
        if self.witnesses.len() < LIST_CAP {
            self.witnesses
                .push(serde_json::to_value(w).expect("witness serializes"));
        }
    }

    pub fn counterexample(&mut self, c: impl Serialize) {
        self.counterexamples_total += 1;
        if self.counterexamples.len() < LIST_CAP {
            self.counterexamples
                .push(serde_json::to_value(c).expect("counterexample serializes"));
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Adds a failure note when the report failed without a counterexample.
    pub fn finish(mut self) -> Self {
        if !self.passed && self.counterexamples.is_empty() {
            let failed: Vec<_> = self
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            self.notes
                .push(format!("failed checks: {}", failed.join(", ")));
        }
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

/// Rolls several reports into one under `command`.
pub fn aggregate(command: &str, reports: Vec<VerificationReport>) -> VerificationReport {
    let mut all = VerificationReport::new(command);
    for r in &reports {
        all.check(&r.command, r.passed, summary(r));
    }
    all.details = Value::Array(
        reports
            .into_iter()
            .map(|r| serde_json::to_value(r).expect("report serializes"))
            .collect(),
    );
    all.finish()
}

fn summary(r: &VerificationReport) -> String {
    let mut parts = Vec::new();
    if let Some(v) = r.value {
        parts.push(format!("value {}/{}", v.num, v.den));
    }
    if let Some(v) = r.real_value {
        parts.push(format!("value {v}"));
    }
    if let Some(n) = r.examined {
        parts.push(format!("examined {n}"));
    }
    if r.counterexamples_total > 0 {
        parts.push(format!("{} counterexamples", r.counterexamples_total));
    }
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_serializes_as_num_den() {
        let mut r = VerificationReport::new("x");
        r.value = Some(Ratio::new(12u64, 16).into());
        let json = r.to_json(false);
        assert!(json.contains(r#""value":{"num":3,"den":4}"#), "{json}");
        assert!(!json.contains("examined"));
    }

    #[test]
    fn failure_without_counterexample_gets_a_note() {
        let mut r = VerificationReport::new("x");
        r.check("a", true, "");
        r.check("b", false, "");
        let r = r.finish();
        assert!(!r.passed);
        assert_eq!(r.notes, ["failed checks: b"]);
    }

    #[test]
    fn lists_are_capped() {
        let mut r = VerificationReport::new("x");
        for i in 0..40 {
            r.counterexample(i);
            r.witness(i);
        }
        assert_eq!(r.counterexamples.len(), LIST_CAP);
        assert_eq!(r.witnesses.len(), LIST_CAP);
        assert_eq!(r.counterexamples_total, 40);
    }
}
