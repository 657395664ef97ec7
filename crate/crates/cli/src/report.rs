//! Per-instance reports, the certificate document and the plain-text table.

use serde::Serialize;
use serde_json::{json, Value};

use nori_core::linalg::{FgModule, Rat, RatMatrix};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Outcome of one command on one corpus instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub instance: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Table rows for standard output.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl InstanceReport {
    pub fn new(instance: &str) -> Self {
        InstanceReport {
            instance: instance.to_string(),
            passed: true,
            checks: Vec::new(),
            data: Value::Null,
            witness: None,
            lines: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
        passed
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Marks the instance failed with a witness.
    pub fn fail(&mut self, check: &str, witness: Value) {
        self.check(check, false);
        self.witness = Some(witness);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandRun {
    pub command: String,
    pub ring: String,
    pub passed: bool,
    pub instances: Vec<InstanceReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

/// The structured output of one invocation; contains no timestamps or paths.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_sha256: String,
    pub options: Options,
    pub passed: bool,
    pub runs: Vec<CommandRun>,
}

impl Certificate {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for run in &self.runs {
            out.push_str(&format!("# {} (ring {})\n", run.command, run.ring));
            for inst in &run.instances {
                let verdict = if inst.passed { "ok" } else { "FAILED" };
                out.push_str(&format!("## {}: {verdict}\n", inst.instance));
                for l in &inst.lines {
                    out.push_str(&format!("  {l}\n"));
                }
                for c in inst.checks.iter().filter(|c| !c.passed) {
                    out.push_str(&format!("  failed check: {}\n", c.name));
                }
                if let Some(w) = &inst.witness {
                    out.push_str(&format!("  witness: {w}\n"));
                }
            }
        }
        out
    }
}

pub fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn matrix(m: &RatMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.to_rows().iter().map(|r| vector(r)).collect::<Vec<_>>(),
    })
}

pub fn module(m: &FgModule) -> Value {
    json!({
        "free_rank": m.free_rank(),
        "torsion": m.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

/// `0`, `free rank 1`, `torsion Z/2`, `free rank 1, torsion Z/2`, ...
pub fn describe(m: &FgModule) -> String {
    let mut parts = Vec::new();
    if m.free_rank() > 0 {
        parts.push(format!("free rank {}", m.free_rank()));
    }
    if !m.torsion().is_empty() {
        let t: Vec<String> = m
            .torsion()
            .iter()
            .map(|t| format!("{}/{t}", m.ring()))
            .collect();
        parts.push(format!("torsion {}", t.join(" + ")));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

pub fn inline_vector(v: &[Rat]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn inline_matrix(m: &RatMatrix) -> String {
    format!(
        "[{}]",
        m.to_rows()
            .iter()
            .map(|r| inline_vector(r))
            .collect::<Vec<_>>()
            .join(", ")
    )
}
