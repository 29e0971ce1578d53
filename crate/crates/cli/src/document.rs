//! Report document: fixed key order on emission, sections in pipeline order.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;
use spraylab::{Check, Report, Status};

/// Ordered key/value pairs, emitted as a JSON object in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Data(Vec<(String, Value)>);

impl Data {
    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }
}

impl Serialize for Data {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub data: Data,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            data: Data::default(),
            checks: Vec::new(),
        }
    }

    pub fn data(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key, value);
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends a report, prefixing check names with `prefix` when nonempty.
    pub fn report(&mut self, prefix: &str, report: Report) {
        for mut c in report.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            self.checks.push(c);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub all_passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Value,
    pub sections: Vec<Section>,
    pub summary: Summary,
}

impl Document {
    pub fn new(command: &'static str, input: Value, sections: Vec<Section>) -> Self {
        let all: Vec<&Check> = sections.iter().flat_map(|s| &s.checks).collect();
        let count = |st: Status| all.iter().filter(|c| c.status == st).count();
        let summary = Summary {
            checks: all.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            vacuous: count(Status::Vacuous),
            all_passed: count(Status::Fail) == 0,
        };
        Self {
            tool: "spraylab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            sections,
            summary,
        }
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(!self.summary.all_passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        for section in &self.sections {
            let _ = writeln!(out, "\n== {} ==", section.name);
            for (k, v) in &section.data.0 {
                let _ = writeln!(out, "  {k}: {}", render(v, 4));
            }
            for c in &section.checks {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Vacuous => "vacuous",
                };
                let _ = write!(out, "  [{tag}] {}", c.name);
                if let Some(r) = c.residual.as_deref().filter(|r| *r != "0") {
                    let _ = write!(out, "  (residual {r})");
                }
                if !c.notes.is_empty() {
                    let _ = write!(out, "  -- {}", c.notes);
                }
                out.push('\n');
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\nsummary: {} checks, {} passed, {} failed, {} vacuous",
            s.checks, s.passed, s.failed, s.vacuous
        );
        out
    }
}

fn render(v: &Value, indent: usize) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(|i| render(i, indent)).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Array(items) => {
            let pad = " ".repeat(indent);
            items
                .iter()
                .map(|i| format!("\n{pad}- {}", render(i, indent + 2)))
                .collect()
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}: {}", render(v, indent + 2)))
                .collect();
            parts.join("; ")
        }
        other => other.to_string(),
    }
}
