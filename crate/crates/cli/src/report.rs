//! JSON run reports.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    /// sha256 of the canonical `cplx v1` text of the loaded complex
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Value,
    pub seeds: Vec<u64>,
    pub threads: usize,
    /// wall-clock milliseconds per phase
    pub timings_ms: BTreeMap<String, f64>,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Collects digests and phase timings while a command runs.
pub struct Recorder {
    pub inputs: Vec<InputDigest>,
    pub timings_ms: BTreeMap<String, f64>,
    phase_start: Instant,
}

impl Recorder {
    pub fn new() -> Self {
        Recorder { inputs: Vec::new(), timings_ms: BTreeMap::new(), phase_start: Instant::now() }
    }

    pub fn input(&mut self, path: &Path, canonical_text: &str) {
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: digest(canonical_text) });
    }

    /// Closes the current phase under `name` and starts the next one.
    pub fn phase(&mut self, name: &str) {
        let now = Instant::now();
        *self.timings_ms.entry(name.to_string()).or_default() += (now - self.phase_start).as_secs_f64() * 1e3;
        self.phase_start = now;
    }
}
