//! Run reports, content digests and atomic writes.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process;

/// The truncation parameters every result is quoted with.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Scale {
    pub dom_bound: usize,
    pub depth: usize,
    pub cutoff: usize,
    pub seed: u64,
}

/// Result of re-running a brute-force check next to the fast path.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub agrees: bool,
    /// What was compared; for a disagreement, both sides.
    pub detail: Value,
}

impl OracleCheck {
    pub fn compare<T: Serialize + PartialEq>(fast: &T, oracle: &T) -> Self {
        let agrees = fast == oracle;
        OracleCheck { agrees, detail: json!({ "fast": fast, "oracle": oracle }) }
    }

    pub fn holds(agrees: bool, detail: Value) -> Self {
        OracleCheck { agrees, detail }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub inputs: Value,
    pub outputs: Value,
    pub timing_ms: f64,
    pub scale: Scale,
    pub oracle: Option<OracleCheck>,
    /// `hit`, `miss` or `stale` for commands backed by the witness cache.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<&'static str>,
    /// Whether the run found a counterexample.
    pub counterexample: bool,
}

/// Hex SHA-256 of a JSON value; object keys serialize in sorted order, so
/// equal values digest equally.
pub fn digest(value: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_vec(value).expect("JSON values serialize")))
}

/// Writes `bytes` next to `path` under a temporary name, then renames it
/// into place so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let name = path.file_name().ok_or_else(|| io::Error::other("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), process::id()));
    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
