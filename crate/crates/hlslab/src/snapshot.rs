//! Recorded spectral-gap values, kept beside the quotient cache.
//!
//! A snapshot is written the first time a level is computed and compared on
//! every later run; `--update-snapshots` overwrites it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cache::write_atomic;
use crate::error::{AppError, Result};

pub const SNAPSHOT_FORMAT: &str = "hlslab-snapshot/1";
pub const SNAPSHOT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub format: String,
    pub family: String,
    /// Level (as a decimal string) to recorded value.
    pub values: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SnapshotStatus {
    Recorded,
    Matched { stored: f64 },
    Mismatched { stored: f64 },
}

impl SnapshotStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, SnapshotStatus::Mismatched { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SnapshotStatus::Recorded => "recorded",
            SnapshotStatus::Matched { .. } => "match",
            SnapshotStatus::Mismatched { .. } => "MISMATCH",
        }
    }
}

pub fn snapshot_path(cache_dir: &Path, name: &str) -> PathBuf {
    cache_dir.join("snapshots").join(format!("{name}.json"))
}

impl Snapshot {
    pub fn new(family: &str) -> Self {
        Snapshot {
            format: SNAPSHOT_FORMAT.into(),
            family: family.into(),
            values: BTreeMap::new(),
        }
    }

    /// An empty snapshot when the file does not exist.
    pub fn load(path: &Path, family: &str) -> Result<Self> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Snapshot::new(family)),
            Err(e) => return Err(AppError::io(path, e)),
        };
        let ctx = path.display().to_string();
        let s: Snapshot = serde_json::from_str(&text).map_err(|e| AppError::format(&ctx, e))?;
        if s.format != SNAPSHOT_FORMAT || s.family != family {
            return Err(AppError::format(&ctx, "format tag or family does not match"));
        }
        Ok(s)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| AppError::format("snapshot", e))?;
        write_atomic(path, text.as_bytes())
    }

    /// Compares `value` with the stored one, recording it if absent or if
    /// `update` is set.
    pub fn check(&mut self, level: usize, value: f64, update: bool) -> SnapshotStatus {
        let key = level.to_string();
        match self.values.get(&key).copied() {
            Some(stored) if !update => {
                if (stored - value).abs() <= SNAPSHOT_TOLERANCE {
                    SnapshotStatus::Matched { stored }
                } else {
                    SnapshotStatus::Mismatched { stored }
                }
            }
            _ => {
                self.values.insert(key, value);
                SnapshotStatus::Recorded
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_then_compare() {
        let dir = tempfile::tempdir().unwrap();
        let path = snapshot_path(dir.path(), "tau-congruence");
        let mut s = Snapshot::load(&path, "congruence").unwrap();
        assert_eq!(s.check(2, 0.5, false), SnapshotStatus::Recorded);
        s.store(&path).unwrap();
        let mut s = Snapshot::load(&path, "congruence").unwrap();
        assert!(s.check(2, 0.5 + 1e-7, false).ok());
        assert!(!s.check(2, 0.51, false).ok());
        assert_eq!(s.check(2, 0.51, true), SnapshotStatus::Recorded);
        assert!(Snapshot::load(&path, "fd").is_err());
    }
}
