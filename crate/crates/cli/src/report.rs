//! Machine- and human-readable reports.

use std::fmt::Write as _;

use pathmodel::Verdict;
use serde::{Deserialize, Serialize};

use crate::model::Guards;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, v: &Verdict) -> Self {
        Self {
            name: name.into(),
            holds: v.holds(),
            witness: v.witness().map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    pub interval: String,
    pub universe: String,
    pub suites: Vec<String>,
    pub contexts: usize,
    pub families: Vec<String>,
    pub guards: Guards,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub model: String,
    pub config: Config,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.error > 0 || self.suites.iter().any(|s| s.status == Status::Skipped) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}\n", self.model);
        let _ = writeln!(
            out,
            "interval `{}`, universe `{}`, guards {} objects / {} morphisms, box dimension {}\n",
            self.config.interval,
            self.config.universe,
            self.config.guards.max_objects.unwrap_or_default(),
            self.config.guards.max_morphisms.unwrap_or_default(),
            self.config.guards.max_box_dim.unwrap_or_default(),
        );
        let _ = writeln!(out, "| suite | status | checks | note |\n|---|---|---|---|");
        for s in &self.suites {
            let held = s.checks.iter().filter(|c| c.holds).count();
            let _ = writeln!(
                out,
                "| {} | {:?} | {held}/{} | {} |",
                s.name,
                s.status,
                s.checks.len(),
                s.reason.as_deref().unwrap_or("")
            );
        }
        for s in &self.suites {
            let failed: Vec<&Check> = s.checks.iter().filter(|c| !c.holds).collect();
            if failed.is_empty() {
                continue;
            }
            let _ = writeln!(out, "\n## {} failures\n", s.name);
            for c in failed {
                let _ = writeln!(out, "- `{}`: {}", c.name, c.witness.as_deref().unwrap_or("no witness"));
            }
        }
        out
    }
}

/// The report with timing fields removed, for comparing runs.
pub fn without_timing(json: &str) -> serde_json::Result<serde_json::Value> {
    fn strip(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                m.remove("elapsed_ms");
                m.values_mut().for_each(strip);
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    strip(&mut v);
    Ok(v)
}
