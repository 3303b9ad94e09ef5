use std::path::{Path, PathBuf};

use fracsense::io::{json_document, write_text};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "fracsense";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of a canonical JSON document.
pub fn config_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes output files, each with a `<name>.meta.json` sidecar.
pub struct OutputWriter {
    dir: PathBuf,
    command: String,
    hash: String,
    seed: u64,
    inputs: Value,
    written: Vec<PathBuf>,
}

impl OutputWriter {
    /// `inputs` is the canonical JSON the hash is taken over.
    pub fn new(dir: &Path, command: &str, inputs: Value, seed: u64) -> fracsense::Result<Self> {
        let canonical = serde_json::to_string(&inputs)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            command: command.into(),
            hash: config_hash(&canonical),
            seed,
            inputs,
            written: Vec::new(),
        })
    }

    /// Writes `name` and its sidecar; `extra` is merged into the sidecar.
    pub fn write(&mut self, name: &str, contents: &str, extra: Value) -> fracsense::Result<()> {
        let path = self.dir.join(name);
        write_text(&path, contents)?;
        let mut meta = json!({
            "file": name,
            "tool": TOOL,
            "tool_version": VERSION,
            "command": self.command,
            "config_hash": self.hash,
            "master_seed": self.seed,
            "inputs": self.inputs,
        });
        if let (Some(m), Value::Object(e)) = (meta.as_object_mut(), extra) {
            m.extend(e);
        }
        write_text(&self.dir.join(format!("{name}.meta.json")), &json_document(&meta)?)?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}
