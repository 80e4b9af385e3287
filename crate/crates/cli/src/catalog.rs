//! Append-only JSON-lines catalog of computed codes. Each line is
//! `{"record": {...}, "sha256": "<hex of the record's JSON>"}`.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tracecodes::quantum::Derivation;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Classical,
    Stabilizer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub family: Family,
    pub p: u32,
    pub s: u32,
    pub r: u32,
    pub t: Option<usize>,
    pub points_kind: Option<String>,
    pub derivations: Vec<Derivation>,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub d_designed: u64,
    pub d_lb: Option<u64>,
    pub d_ub: Option<u64>,
    pub provenance: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub engine_version: String,
}

pub const ENGINE_VERSION: &str = concat!("tracecodes ", env!("CARGO_PKG_VERSION"));

pub fn now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

#[derive(Serialize, Deserialize)]
struct Line {
    record: CodeRecord,
    sha256: String,
}

pub fn checksum(record: &CodeRecord) -> String {
    let json = serde_json::to_string(record).expect("records serialize");
    Sha256::digest(json.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn append(path: &Path, records: &[CodeRecord]) -> Result<(), CliError> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        let line = Line {
            sha256: checksum(r),
            record: r.clone(),
        };
        writeln!(file, "{}", serde_json::to_string(&line)?)?;
    }
    Ok(())
}

/// Every record, after checking each line's checksum.
pub fn read(path: &Path) -> Result<Vec<CodeRecord>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let bad = |message: String| CliError::Catalog {
            line: i + 1,
            message,
        };
        let line: Line = serde_json::from_str(raw).map_err(|e| bad(e.to_string()))?;
        let sum = checksum(&line.record);
        if sum != line.sha256 {
            return Err(bad(format!(
                "checksum {} does not match {}",
                line.sha256, sum
            )));
        }
        out.push(line.record);
    }
    Ok(out)
}
