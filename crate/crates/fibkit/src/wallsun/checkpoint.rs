//! Scan checkpoints: a small TOML document written atomically after every
//! completed segment, so an interrupted scan can pick up where it stopped.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wallsun::NearMiss;

/// Version stamp written into every checkpoint; readers refuse anything else.
pub const CHECKPOINT_SCHEMA_VERSION: u32 = 1;

/// Durable scan state. `last_completed` is the largest candidate whose
/// segment has been fully processed and merged; everything at or below it
/// never needs to be rescanned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub schema_version: u32,
    pub range_lo: u64,
    pub range_hi: u64,
    pub last_completed: u64,
    pub near_misses: Vec<NearMiss>,
    pub wss_found: Vec<u64>,
    /// Unix seconds when the scan first started; preserved across resumes.
    pub started_at: u64,
    /// Unix seconds of the most recent checkpoint write.
    pub updated_at: u64,
}

impl ScanCheckpoint {
    /// Serializes to TOML and writes via a sibling temporary file plus
    /// rename, so the path never holds a half-written document.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = toml::to_string(self)
            .map_err(|e| Error::internal(format!("checkpoint serialization failed: {e}")))?;
        let tmp = path.with_extension("toml.tmp");
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(text.as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Reads a checkpoint back, refusing unknown schema versions and
    /// internally inconsistent range bookkeeping.
    pub fn load(path: &Path) -> Result<ScanCheckpoint> {
        let text = fs::read_to_string(path).map_err(|e| {
            Error::checkpoint(format!("cannot read checkpoint {}: {e}", path.display()))
        })?;
        let cp: ScanCheckpoint = toml::from_str(&text).map_err(|e| {
            Error::checkpoint(format!("cannot parse checkpoint {}: {e}", path.display()))
        })?;
        if cp.schema_version != CHECKPOINT_SCHEMA_VERSION {
            return Err(Error::checkpoint(format!(
                "checkpoint {} has schema version {}, this build reads {}",
                path.display(),
                cp.schema_version,
                CHECKPOINT_SCHEMA_VERSION
            )));
        }
        if cp.range_lo > cp.range_hi || cp.last_completed < cp.range_lo || cp.last_completed > cp.range_hi
        {
            return Err(Error::checkpoint(format!(
                "checkpoint {} is inconsistent: range [{}, {}], last_completed {}",
                path.display(),
                cp.range_lo,
                cp.range_hi,
                cp.last_completed
            )));
        }
        Ok(cp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ScanCheckpoint {
        ScanCheckpoint {
            schema_version: CHECKPOINT_SCHEMA_VERSION,
            range_lo: 2,
            range_hi: 1_000_000,
            last_completed: 1_048_577,
            near_misses: vec![NearMiss { p: 17, alpha: 16, distance: 1 }],
            wss_found: vec![],
            started_at: 1_700_000_000,
            updated_at: 1_700_000_060,
        }
    }

    #[test]
    fn round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        let mut cp = sample();
        cp.last_completed = 524_288;
        cp.save(&path).unwrap();
        assert_eq!(ScanCheckpoint::load(&path).unwrap(), cp);
        // Overwrite in place, as the scanner does segment after segment.
        cp.last_completed = 786_432;
        cp.updated_at += 30;
        cp.save(&path).unwrap();
        assert_eq!(ScanCheckpoint::load(&path).unwrap(), cp);
    }

    #[test]
    fn refuses_missing_garbage_and_wrong_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        assert!(matches!(ScanCheckpoint::load(&path), Err(Error::Checkpoint(_))));

        std::fs::write(&path, "not really toml [[[").unwrap();
        assert!(matches!(ScanCheckpoint::load(&path), Err(Error::Checkpoint(_))));

        let mut cp = sample();
        cp.last_completed = 524_288;
        cp.schema_version = 2;
        std::fs::write(&path, toml::to_string(&cp).unwrap()).unwrap();
        let err = ScanCheckpoint::load(&path).unwrap_err();
        assert!(err.to_string().contains("schema version 2"));
    }

    #[test]
    fn refuses_inconsistent_ranges() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        let cp = sample(); // last_completed beyond range_hi
        std::fs::write(&path, toml::to_string(&cp).unwrap()).unwrap();
        assert!(matches!(ScanCheckpoint::load(&path), Err(Error::Checkpoint(_))));
    }
}
