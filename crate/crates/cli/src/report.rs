use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Host-dependent data, excluded from the pass computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub timestamp_unix: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub d: u32,
    pub params: BTreeMap<String, Value>,
    pub items: Vec<Item>,
    pub pass: bool,
    /// Set when the run could not reach a verdict (resource guard, no stabilization).
    pub inconclusive: Option<String>,
    /// Diagnostics that do not enter the verdict.
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
    pub version: String,
    pub metadata: Metadata,
}

impl Report {
    pub fn new(suite: &str, d: u32) -> Self {
        Self {
            suite: suite.to_string(),
            d,
            params: BTreeMap::new(),
            items: Vec::new(),
            pass: false,
            inconclusive: None,
            notes: Vec::new(),
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
            metadata: Metadata { timestamp_unix: 0, threads: 1 },
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn item(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString, pass: bool) {
        self.items.push(Item { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), pass });
    }

    /// `expected == actual` as strings.
    pub fn compare(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        self.items.push(Item { name: name.into(), expected: e, actual: a, pass });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn finish(&mut self) {
        self.pass = self.inconclusive.is_none() && !self.items.is_empty() && self.items.iter().all(|i| i.pass);
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.inconclusive, self.pass) {
            (Some(_), _) => 3,
            (None, true) => 0,
            (None, false) => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("center", 2);
        r.param("max_weight", 12);
        r.compare("dim", 11, 11);
        r.item("poly", "x^2", "x^2 - 1/8 x", false);
        r.finish();
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn empty_report_does_not_pass() {
        let mut r = Report::new("center", 1);
        r.finish();
        assert!(!r.pass);
    }

    #[test]
    fn inconclusive_exits_three() {
        let mut r = Report::new("zhu-direct", 2);
        r.compare("dim", 41, 41);
        r.inconclusive = Some("not stabilized".into());
        r.finish();
        assert_eq!(r.exit_code(), 3);
    }
}
