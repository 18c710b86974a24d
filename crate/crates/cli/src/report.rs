//! Report records and their two output formats.
//!
//! The `text` format is pretty-printed JSON with a fixed field order:
//!
//! ```text
//! { "tool", "version", "scenario": { "kind", "name", "seed", "parameters" },
//!   "pass", "records": [ { "name", "pass", "summary", "detail", "inputs"? } ] }
//! ```
//!
//! Reports carry no timings or paths outside the scenario echo, so a rerun
//! with the same configuration and seed produces identical bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioEcho {
    pub kind: String,
    pub name: String,
    pub seed: u64,
    pub parameters: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub detail: Value,
    /// Inputs of failing cases, enough to rerun each one alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Value>,
}

impl Record {
    pub fn new(name: impl Into<String>, pass: bool, summary: impl Into<String>, detail: Value) -> Self {
        Record { name: name.into(), pass, summary: summary.into(), detail, inputs: None }
    }

    pub fn with_inputs(mut self, inputs: Vec<Value>) -> Self {
        if !inputs.is_empty() {
            self.inputs = Some(Value::Array(inputs));
        }
        self
    }

    /// A record for a computation that returned an error.
    pub fn failed(name: impl Into<String>, err: impl std::fmt::Display, inputs: Value) -> Self {
        Record {
            name: name.into(),
            pass: false,
            summary: format!("error: {err}"),
            detail: Value::Null,
            inputs: Some(inputs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: ScenarioEcho,
    pub pass: bool,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(scenario: ScenarioEcho, records: Vec<Record>) -> Self {
        Report {
            tool: "bgl".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            pass: records.iter().all(|r| r.pass),
            scenario,
            records,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Table,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table(report),
    }
}

fn table(report: &Report) -> String {
    let width = report.records.iter().map(|r| r.name.len()).max().unwrap_or(4).max(6);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} | {} '{}' seed {}",
        report.tool, report.version, report.scenario.kind, report.scenario.name, report.scenario.seed
    );
    let _ = writeln!(out, "{:<width$}  {:<4}  summary", "record", "ok");
    let _ = writeln!(out, "{}", "-".repeat(width + 16));
    for r in &report.records {
        let _ = writeln!(out, "{:<width$}  {:<4}  {}", r.name, if r.pass { "PASS" } else { "FAIL" }, r.summary);
    }
    let passed = report.records.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{passed}/{} records pass", report.records.len());
    out
}
