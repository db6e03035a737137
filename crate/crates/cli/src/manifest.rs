use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

pub const MANIFEST_FORMAT: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InputChecksum {
    /// Role of the input (e.g. `treebank`, `lexicon`) and its file name.
    pub role: String,
    pub name: String,
    pub sha256: String,
}

/// Provenance record written next to every output set. Everything except
/// `timestamp` is a function of the inputs and settings.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub inputs: Vec<InputChecksum>,
    pub outputs: Vec<String>,
    pub tool_version: String,
    pub format_version: u32,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            config: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            format_version: MANIFEST_FORMAT,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn add_input(&mut self, role: &str, path: &Path) -> Result<(), Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
        self.inputs.push(InputChecksum {
            role: role.to_string(),
            name: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| Failure::io(path, e))
    }
}
