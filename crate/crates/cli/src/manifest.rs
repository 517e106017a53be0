//! Run manifests: every command writes one next to its outputs, recording
//! the argument vector, input digests, seed, tool version, and duration.
//! Identical command and seed give byte-identical outputs apart from the
//! duration field.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    /// Input path -> sha256 hex digest.
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub duration_ms: u128,
}

pub struct ManifestBuilder {
    command: String,
    inputs: BTreeMap<String, String>,
    seed: u64,
    start: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, seed: u64) -> Self {
        ManifestBuilder {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed,
            start: Instant::now(),
        }
    }

    /// Reads a file, recording its digest.
    pub fn read_input(&mut self, path: &Path) -> std::io::Result<String> {
        let data = std::fs::read_to_string(path)?;
        let mut hasher = Sha256::new();
        hasher.update(data.as_bytes());
        self.inputs.insert(
            path.display().to_string(),
            format!("{:x}", hasher.finalize()),
        );
        Ok(data)
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            command: self.command,
            argv: std::env::args().collect(),
            inputs: self.inputs,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            duration_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// Recomputes input digests and compares them with the recorded values.
#[cfg_attr(not(test), allow(dead_code))]
pub fn verify_manifest(path: &Path) -> std::io::Result<Result<(), String>> {
    let data = std::fs::read_to_string(path)?;
    let manifest: RunManifest = match serde_json::from_str(&data) {
        Ok(m) => m,
        Err(e) => return Ok(Err(format!("malformed manifest: {e}"))),
    };
    for (input, recorded) in &manifest.inputs {
        let data = std::fs::read_to_string(Path::new(input))?;
        let mut hasher = Sha256::new();
        hasher.update(data.as_bytes());
        let computed = format!("{:x}", hasher.finalize());
        if &computed != recorded {
            return Ok(Err(format!(
                "digest mismatch for `{input}`: recorded {recorded}, computed {computed}"
            )));
        }
    }
    Ok(Ok(()))
}
