use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Reproducibility record written alongside every persisted output. The
/// manifest itself carries wall-clock timestamps and is therefore excluded
/// from byte-identity guarantees; the outputs it lists are not.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub subcommand: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub base_seed: Option<u64>,
    pub input_digests: BTreeMap<String, String>,
    pub tool_version: &'static str,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub outputs: Vec<String>,
}

pub struct ManifestBuilder {
    subcommand: String,
    parameters: BTreeMap<String, serde_json::Value>,
    base_seed: Option<u64>,
    input_digests: BTreeMap<String, String>,
    started_unix: u64,
    outputs: Vec<String>,
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl ManifestBuilder {
    pub fn new(subcommand: &str) -> Self {
        ManifestBuilder {
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            base_seed: None,
            input_digests: BTreeMap::new(),
            started_unix: now_unix(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
        self
    }

    pub fn base_seed(&mut self, seed: u64) -> &mut Self {
        self.base_seed = Some(seed);
        self
    }

    pub fn input(&mut self, path: &Path, contents: &[u8]) -> &mut Self {
        let mut hasher = Sha256::new();
        hasher.update(contents);
        let hex: String = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.input_digests
            .insert(path.display().to_string(), format!("sha256:{hex}"));
        self
    }

    pub fn output(&mut self, path: &Path) -> &mut Self {
        self.outputs.push(path.display().to_string());
        self
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            schema: "cliquechroma.manifest.v1",
            subcommand: self.subcommand,
            parameters: self.parameters,
            base_seed: self.base_seed,
            input_digests: self.input_digests,
            tool_version: env!("CARGO_PKG_VERSION"),
            started_unix: self.started_unix,
            finished_unix: now_unix(),
            outputs: self.outputs,
        }
    }
}

/// Manifest path for a single-file output: `<file>.manifest.json`.
pub fn sibling_manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    let json = serde_json::to_string_pretty(manifest)?;
    std::fs::write(path, json + "\n")
        .with_context(|| format!("writing manifest {}", path.display()))
}
