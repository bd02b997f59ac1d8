//! Run reports: verdicts, input hashes and timings.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    #[serde(rename = "skipped(external-data)")]
    SkippedExternal,
    Error,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SkippedExternal => "skipped(external-data)",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    /// SHA-256 of every input file, keyed by path.
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub body: serde_json::Value,
    /// Milliseconds per check; kept apart so the rest of the report is reproducible.
    pub timings_ms: BTreeMap<String, u128>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            body: serde_json::Value::Null,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn hash_input(&mut self, path: &Path) {
        let digest = match std::fs::read(path) {
            Ok(bytes) => format!("{:x}", Sha256::digest(&bytes)),
            Err(e) => format!("unreadable: {e}"),
        };
        self.inputs.insert(path.display().to_string(), digest);
    }

    /// Run `f`, record its verdict and elapsed time.
    pub fn check(&mut self, id: &str, f: impl FnOnce() -> (Verdict, String)) {
        let start = Instant::now();
        let (verdict, detail) = f();
        self.timings_ms.insert(id.to_string(), start.elapsed().as_millis());
        self.checks.push(CheckResult { id: id.to_string(), verdict, detail });
    }

    pub fn push(&mut self, result: CheckResult, elapsed_ms: u128) {
        self.timings_ms.insert(result.id.clone(), elapsed_ms);
        self.checks.push(result);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.verdict, Verdict::Fail | Verdict::Error))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(text) = self.body.get("text").and_then(|t| t.as_str()) {
            out.push_str(text);
            if !text.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", c.verdict.as_str(), c.id, c.detail));
        }
        out
    }
}
