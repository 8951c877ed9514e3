use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use stabglue::antype::corpus_descriptor;

use crate::config::RunConfig;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Stable check name.
    pub check: String,
    /// Whether the check held.
    pub passed: bool,
    /// Replayable literal of a failing input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Counts and exact values, with exact scalars as strings.
    pub details: Value,
}

impl CheckResult {
    pub fn new(
        check: impl Into<String>,
        passed: bool,
        witness: Option<String>,
        details: Value,
    ) -> Self {
        Self {
            check: check.into(),
            passed,
            witness,
            details,
        }
    }
}

/// Wall-clock timings, kept apart from the deterministic part of the report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    /// Whole run in milliseconds.
    pub total_ms: u64,
    /// Per-check durations, in execution order.
    pub checks: Vec<CheckTiming>,
}

/// Duration of one group of checks.
#[derive(Clone, Debug, Serialize)]
pub struct CheckTiming {
    pub name: String,
    pub ms: u64,
}

/// The JSON report of one run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub corpus_fingerprint: String,
    pub passed: bool,
    pub results: Vec<CheckResult>,
    pub timings: Timings,
}

/// SHA-256 of the descriptors of the enumerated corpora.
pub fn corpus_fingerprint(config: &RunConfig) -> String {
    let shifts = config.shifts();
    let mut hasher = Sha256::new();
    for n in [1, 2] {
        hasher.update(corpus_descriptor(n, config.corpus_cap, &shifts).as_bytes());
        hasher.update(b"\n");
    }
    format!("{:x}", hasher.finalize())
}

/// Collects check results and their timings.
pub struct Recorder {
    start: Instant,
    results: Vec<CheckResult>,
    timings: Timings,
}

impl Default for Recorder {
    fn default() -> Self {
        Self {
            start: Instant::now(),
            results: Vec::new(),
            timings: Timings::default(),
        }
    }
}

impl Recorder {
    /// Runs a group of checks and records their results and duration.
    pub fn run<E>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<Vec<CheckResult>, E>,
    ) -> Result<(), E> {
        let t = Instant::now();
        let out = f()?;
        self.timings.checks.push(CheckTiming {
            name: name.to_string(),
            ms: t.elapsed().as_millis() as u64,
        });
        self.results.extend(out);
        Ok(())
    }

    /// Finishes the report.
    pub fn finish(mut self, command: &str, config: &RunConfig) -> Report {
        self.timings.total_ms = self.start.elapsed().as_millis() as u64;
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config: config.clone(),
            corpus_fingerprint: corpus_fingerprint(config),
            passed: self.results.iter().all(|r| r.passed),
            results: self.results,
            timings: self.timings,
        }
    }
}

impl Report {
    /// Writes the report as pretty-printed JSON.
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(path, text + "\n")
    }
}

/// Counts grouped by name, for compact details.
pub fn counts(pairs: &[(&str, usize)]) -> Value {
    let map: BTreeMap<&str, usize> = pairs.iter().copied().collect();
    serde_json::to_value(map).expect("counts serialize")
}
