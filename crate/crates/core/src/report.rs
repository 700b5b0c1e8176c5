//! Run reports: one record per command invocation with named checks and a
//! payload, serialized with a fixed field order so that repeated runs give
//! byte-identical JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::tables::data_version;
use crate::TOOL_VERSION;

/// One named pass/fail check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Empty when the check passed without remarks.
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

/// Record of one command invocation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Parameters as given, in the order of the command's arguments.
    pub parameters: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Remarks that are not checks, such as cells skipped as infeasible.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    /// Wall-clock timings in milliseconds; filled only on request, so that
    /// reports stay reproducible by default.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub timings_ms: Vec<(String, u64)>,
    pub tool_version: String,
    pub data_version: String,
    pub passed: bool,
    pub payload: Value,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            parameters: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            timings_ms: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
            data_version: data_version().to_string(),
            passed: true,
            payload: Value::Null,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable summary: one line per check and a verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!("{} {}\n", self.command, params.join(" ")));
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  {mark} {}\n", c.name));
            } else {
                out.push_str(&format!("  {mark} {}: {}\n", c.name, c.detail));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note {n}\n"));
        }
        for (name, ms) in &self.timings_ms {
            out.push_str(&format!("  time {name}: {ms} ms\n"));
        }
        let failed = self.failed_checks().count();
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.checks.len() - failed,
            self.checks.len()
        ));
        out
    }
}
