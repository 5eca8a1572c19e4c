//! On-disk result cache keyed by canonical parameter strings.
//!
//! Each entry is one JSON file named by the SHA-256 of its key. Writes go to
//! a temporary file in the same directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::record::{SCHEMA, VERSION};

pub const CACHE_ENV: &str = "WKC_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema: u32,
    version: String,
    key: String,
    payload: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir })
    }

    /// The directory named by `WKC_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Ok(Some(Cache::new(d)?)),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let name: String = digest[..16].iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn store<T: Serialize>(&self, key: &str, payload: &T) -> Result<()> {
        let env = Envelope { schema: SCHEMA, version: VERSION.to_string(), key: key.to_string(), payload };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &env)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// `None` on a miss, on a version mismatch and on a corrupt entry; the
    /// last two are logged.
    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Envelope<T>>(&text) {
            Ok(env) if env.schema == SCHEMA && env.version == VERSION && env.key == key => Some(env.payload),
            Ok(_) => {
                log::warn!("ignoring cache entry {} written by another version", path.display());
                None
            }
            Err(e) => {
                log::warn!("skipping corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.load::<Vec<u32>>("k"), None);
        cache.store("k", &vec![1u32, 2, 3]).unwrap();
        assert_eq!(cache.load::<Vec<u32>>("k"), Some(vec![1, 2, 3]));
        assert_eq!(cache.load::<Vec<u32>>("other"), None);
    }

    #[test]
    fn corrupt_entry_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        cache.store("k", &5u32).unwrap();
        fs::write(cache.path("k"), "{ not json").unwrap();
        assert_eq!(cache.load::<u32>("k"), None);
    }
}
