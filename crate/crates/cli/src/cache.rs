//! Append-only JSON-lines result cache.
//!
//! Each line is `{"key": <sha256 hex>, "output": <rendered text>, "exit_code": ..}`.
//! The key hashes the canonical JSON of the request, so a hit replays the
//! exact bytes and exit code of the first run.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped whenever rendered output changes shape.
pub const ARTIFACT_VERSION: &str = concat!("pythagoras-", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    output: String,
    exit_code: i32,
}

pub struct Cache {
    path: PathBuf,
}

/// Content hash of a request. `request` is serialized with sorted keys.
pub fn cache_key(request: &Value) -> String {
    let canonical = serde_json::json!({
        "request": request,
        "version": ARTIFACT_VERSION,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

impl Cache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Self {
            path: path.as_ref().to_path_buf(),
        }
    }

    /// Latest stored output for `key`. Malformed lines are skipped.
    pub fn lookup(&self, key: &str) -> io::Result<Option<(String, i32)>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            if let Ok(entry) = serde_json::from_str::<Line>(&line?) {
                if entry.key == key {
                    found = Some((entry.output, entry.exit_code));
                }
            }
        }
        Ok(found)
    }

    pub fn store(&self, key: &str, output: &str, exit_code: i32) -> io::Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(&Line {
            key: key.to_string(),
            output: output.to_string(),
            exit_code,
        })?;
        writeln!(file, "{line}")
    }
}
