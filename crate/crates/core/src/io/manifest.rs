use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::write_string;
use crate::constants;
use crate::{Error, Result};

/// Everything needed to regenerate a set of output files. No timestamps or
/// host details, so identical inputs give byte-identical manifests.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub constants: Value,
    pub constants_sha256: String,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new<C: Serialize>(command: &str, config: &C, outputs: Vec<String>) -> Result<Self> {
        let config = serde_json::to_value(config)
            .map_err(|e| Error::Numerical(format!("config serialisation: {e}")))?;
        let constants = constants::table()
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(*v)))
            .collect();
        Ok(Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            constants: Value::Object(constants),
            constants_sha256: constants::table_hash(),
            outputs,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest values are plain JSON");
        s.push('\n');
        s
    }
}

pub fn write_manifest(path: &Path, manifest: &Manifest) -> Result<()> {
    write_string(path, &manifest.to_json())
}
