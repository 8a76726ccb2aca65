//! Line-delimited JSON checkpoint for sweeps.
//!
//! Every save rewrites the whole file through a temporary sibling and a
//! rename, so the file on disk is always a complete prefix of the run.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ENGINE_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub n: usize,
    pub k: usize,
    pub quotient_dim: usize,
    pub complement: Vec<(usize, usize)>,
    pub elapsed_ms: u64,
    pub engine_version: String,
}

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint {path}: line {line} is corrupt: {reason}")]
    Corrupt { path: String, line: usize, reason: String },
    #[error("checkpoint {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub struct Checkpoint {
    path: PathBuf,
    /// Raw lines kept verbatim, including ignored duplicates.
    lines: Vec<String>,
    done: BTreeMap<(usize, usize), CheckpointRecord>,
}

impl Checkpoint {
    /// Load `path`, or start empty if it does not exist. Warnings go to `warn`.
    pub fn open(path: &Path, warn: &mut dyn FnMut(String)) -> Result<Self, CheckpointError> {
        let io = |source| CheckpointError::Io { path: path.display().to_string(), source };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(io(e)),
        };
        let raw: Vec<&str> = text.lines().collect();
        let last_nonempty = raw.iter().rposition(|l| !l.trim().is_empty());
        let mut cp = Checkpoint { path: path.to_path_buf(), lines: Vec::new(), done: BTreeMap::new() };
        let mut truncated = false;
        for (i, line) in raw.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: CheckpointRecord = match serde_json::from_str(line) {
                Ok(r) => r,
                Err(e) if Some(i) == last_nonempty => {
                    warn(format!("checkpoint line {}: dropping corrupt trailing record ({e})", i + 1));
                    truncated = true;
                    continue;
                }
                Err(e) => {
                    return Err(CheckpointError::Corrupt {
                        path: path.display().to_string(),
                        line: i + 1,
                        reason: e.to_string(),
                    })
                }
            };
            cp.lines.push(line.to_string());
            if rec.engine_version != ENGINE_VERSION {
                warn(format!(
                    "checkpoint line {}: engine {} differs from {ENGINE_VERSION}; record ignored",
                    i + 1,
                    rec.engine_version
                ));
                continue;
            }
            let key = (rec.n, rec.k);
            if cp.done.contains_key(&key) {
                warn(format!("checkpoint line {}: duplicate record for (n, k) = {key:?}; keeping the first", i + 1));
                continue;
            }
            cp.done.insert(key, rec);
        }
        if truncated {
            cp.save().map_err(io)?;
        }
        Ok(cp)
    }

    pub fn is_done(&self, n: usize, k: usize) -> bool {
        self.done.contains_key(&(n, k))
    }

    pub fn records(&self) -> impl Iterator<Item = &CheckpointRecord> {
        self.done.values()
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }

    /// Add records and persist them.
    pub fn append(&mut self, recs: &[CheckpointRecord]) -> Result<(), CheckpointError> {
        for r in recs {
            if self.done.contains_key(&(r.n, r.k)) {
                continue;
            }
            self.lines.push(serde_json::to_string(r).expect("record serializes"));
            self.done.insert((r.n, r.k), r.clone());
        }
        self.save().map_err(|source| CheckpointError::Io { path: self.path.display().to_string(), source })
    }

    fn save(&self) -> std::io::Result<()> {
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = fs::File::create(&tmp)?;
            for l in &self.lines {
                f.write_all(l.as_bytes())?;
                f.write_all(b"\n")?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, &self.path)
    }
}
