use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Outcome of a check: counters, violations (empty on success) and notes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub counts: BTreeMap<String, u64>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

/// Violations beyond this many are counted but not listed in text output.
const SHOWN: usize = 20;

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    pub fn set(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn absorb(&mut self, other: Report) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {}", self.title);
        for (k, v) in &self.counts {
            let _ = writeln!(s, "  {k}: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        for v in self.violations.iter().take(SHOWN) {
            let _ = writeln!(s, "  violation: {v}");
        }
        if self.violations.len() > SHOWN {
            let _ = writeln!(s, "  ... {} more violations", self.violations.len() - SHOWN);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("title".into(), Value::String(self.title.clone()));
        m.insert("passed".into(), Value::Bool(self.passed()));
        m.insert(
            "counts".into(),
            Value::Object(
                self.counts
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(*v)))
                    .collect(),
            ),
        );
        let strings = |xs: &[String]| Value::Array(xs.iter().cloned().map(Value::String).collect());
        m.insert("violations".into(), strings(&self.violations));
        m.insert("notes".into(), strings(&self.notes));
        Value::Object(m)
    }
}
