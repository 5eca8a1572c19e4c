//! Command outcomes: a JSON report, a text rendering and named checks.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, observed: impl ToString, pass: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), observed: observed.to_string(), pass }
    }

    /// Passes when the two renderings agree.
    pub fn equal(name: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (e, o) = (expected.to_string(), observed.to_string());
        let pass = e == o;
        Check { name: name.into(), expected: e, observed: o, pass }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Report with the checks attached under `"checks"`.
    pub fn json(&self) -> Value {
        let mut v = self.report.clone();
        if let Value::Object(map) = &mut v {
            map.insert("checks".into(), serde_json::to_value(&self.checks).expect("checks serialize"));
            map.insert("pass".into(), Value::Bool(self.all_pass()));
        }
        v
    }

    pub fn check_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let tag = if c.pass { "ok  " } else { "FAIL" };
                format!("{tag} {}: expected {}, observed {}\n", c.name, c.expected, c.observed)
            })
            .collect()
    }
}
