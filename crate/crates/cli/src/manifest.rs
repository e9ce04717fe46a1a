use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("ppc-lab ", env!("CARGO_PKG_VERSION"));

/// Everything needed to replay a run. Contains no timestamps, so replaying
/// gives byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub input_hash: Option<String>,
    pub tool_version: &'static str,
}

impl RunManifest {
    pub fn new(command: &str, args: &impl Serialize) -> Result<Self> {
        let parameters = match serde_json::to_value(args)? {
            Value::Object(map) => map.into_iter().collect(),
            Value::Null => BTreeMap::new(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        Ok(Self {
            command: command.to_string(),
            parameters,
            seed: None,
            input_hash: None,
            tool_version: TOOL_VERSION,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_input(mut self, path: &Path) -> Result<Self> {
        self.input_hash = Some(hash_file(path)?);
        Ok(self)
    }
}

pub fn hash_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

#[derive(Serialize)]
struct Document<'a, T> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: &'a T,
}

pub fn to_line<T: Serialize>(manifest: &RunManifest, body: &T) -> Result<String> {
    Ok(serde_json::to_string(&Document { manifest, body })?)
}

/// Writes one JSON document per line to stdout.
pub fn emit<T: Serialize>(manifest: &RunManifest, body: &T) -> Result<()> {
    let line = to_line(manifest, body)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}")?;
    Ok(())
}
