//! The report envelope shared by every command.
//!
//! Reports carry no timestamps and serialize maps in key order, so the same
//! configuration and input files give byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "cuh";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Indeterminate,
    InputError,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::Indeterminate => 2,
            Status::InternalError => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

/// Reads a file and records its hash.
pub fn read_input(path: &Path, inputs: &mut Vec<InputFile>) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    inputs.push(InputFile { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
    String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub inputs: Vec<InputFile>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Option<Value>,
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, config: Value, inputs: Vec<InputFile>, status: Status) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            inputs,
            status,
            exit_code: status.exit_code(),
            result: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `key: value` line per top-level result field, nested values as
    /// compact JSON.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} ({:?}, exit {})", self.tool, self.command, self.status, self.exit_code);
        for f in &self.inputs {
            let _ = writeln!(out, "input {} sha256 {}", f.path, f.sha256);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        match &self.result {
            Some(Value::Object(m)) => {
                for (k, v) in m {
                    let v = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
            Some(v) => {
                let _ = writeln!(out, "{v}");
            }
            None => {}
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashes_known_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x");
        std::fs::write(&p, b"abc").unwrap();
        let mut inputs = Vec::new();
        assert_eq!(read_input(&p, &mut inputs).unwrap(), "abc");
        assert_eq!(inputs[0].sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn exit_codes() {
        let codes: Vec<i32> = [Status::Ok, Status::InputError, Status::Indeterminate, Status::InternalError]
            .map(Status::exit_code)
            .into();
        assert_eq!(codes, [0, 1, 2, 3]);
    }
}
