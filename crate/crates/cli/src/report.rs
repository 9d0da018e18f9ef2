use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "cyclotome";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Pass,
    Fail,
    Skipped,
}

/// A flat rendering of part of a result for CSV and Markdown output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Self { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a command produces before it is wrapped in the report envelope.
#[derive(Clone, Debug)]
pub struct Output {
    pub status: Status,
    pub result: Value,
    pub tables: Vec<Table>,
    /// Print `result` alone instead of the envelope.
    pub raw: bool,
}

impl Output {
    pub fn new(status: Status, result: Value, tables: Vec<Table>) -> Self {
        Self { status, result, tables, raw: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub evidence: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        let status = if failed > 0 { Status::Fail } else { Status::Pass };
        Self { suite: suite.into(), seed, status, passed, failed, skipped, checks }
    }
}

/// Identity of one invocation: everything that determines its output.
#[derive(Clone, Debug, Serialize)]
pub struct Invocation {
    pub command: String,
    pub parameters: Value,
    pub inputs: Vec<InputDigest>,
    pub format: Format,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub sha256: String,
}

impl Invocation {
    /// Hash of the canonical form together with the tool and schema versions.
    pub fn key(&self) -> String {
        let canonical = json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "invocation": self,
        });
        crate::cache::sha256_hex(canonical.to_string().as_bytes())
    }
}

pub fn envelope(inv: &Invocation, out: &Output, wall_time_ms: Option<u128>) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "command": inv.command,
        "parameters": inv.parameters,
        "inputs": inv.inputs,
        "input_hash": inv.key(),
        "status": out.status,
        "result": out.result,
    });
    if let Some(ms) = wall_time_ms {
        v["wall_time_ms"] = json!(ms as u64);
    }
    v
}

pub fn render(inv: &Invocation, out: &Output, wall_time_ms: Option<u128>) -> CliResult<String> {
    match inv.format {
        Format::Json => {
            let v = if out.raw { out.result.clone() } else { envelope(inv, out, wall_time_ms) };
            Ok(serde_json::to_string_pretty(&v).expect("values serialize") + "\n")
        }
        Format::Csv => {
            if out.tables.is_empty() {
                return Err(CliError::Input(format!("`{}` has no tabular output; use --format json", inv.command)));
            }
            let mut s = String::new();
            for (i, t) in out.tables.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&format!("# {}\n", t.title));
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.columns).map_err(|e| CliError::Input(e.to_string()))?;
                for row in &t.rows {
                    w.write_record(row).map_err(|e| CliError::Input(e.to_string()))?;
                }
                s.push_str(&String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"));
            }
            Ok(s)
        }
        Format::Md => {
            if out.tables.is_empty() {
                return Err(CliError::Input(format!("`{}` has no tabular output; use --format json", inv.command)));
            }
            let mut s = format!("**status:** {}\n", status_word(out.status));
            for t in &out.tables {
                s.push_str(&format!("\n### {}\n\n", t.title));
                s.push_str(&format!("| {} |\n", t.columns.join(" | ")));
                s.push_str(&format!("|{}\n", " --- |".repeat(t.columns.len())));
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
                    s.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
            }
            Ok(s)
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

pub fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}
