//! Content-addressed disk cache for simple-factor characters.
//!
//! Entries are keyed by the root-data fingerprint (which already folds in
//! the schema version) and the highest weight. Each file carries a
//! checksum of its payload; anything that fails to parse or verify is
//! treated as a miss and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rigidity_core::rep::{CharacterKey, CharacterStore, DominantTable};
use rigidity_core::weight::SCHEMA_VERSION;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "RIGIDITY_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema: u32,
    key: CharacterKey,
    table: DominantTable,
    checksum: String,
}

fn checksum(key: &CharacterKey, table: &DominantTable) -> String {
    let mut h = Sha256::new();
    h.update(key.to_string());
    h.update(serde_json::to_vec(table).expect("table serializes"));
    hex::encode(h.finalize())
}

/// Disk-backed [`CharacterStore`]. I/O failures only produce a warning;
/// the engine keeps its in-memory memo either way.
#[derive(Debug)]
pub struct DiskStore {
    dir: PathBuf,
    warned: AtomicBool,
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub rejected: AtomicUsize,
}

impl DiskStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskStore {
            dir: dir.into(),
            warned: AtomicBool::new(false),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            rejected: AtomicUsize::new(0),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CharacterKey) -> PathBuf {
        let name = hex::encode(&Sha256::digest(key.to_string().as_bytes())[..16]);
        self.dir.join(format!("{name}.json"))
    }

    fn warn(&self, what: &str, err: impl std::fmt::Display) {
        if !self.warned.swap(true, Ordering::Relaxed) {
            eprintln!(
                "warning: character cache at {} unusable ({}: {}); continuing in memory",
                self.dir.display(),
                what,
                err
            );
        }
    }

    fn read(&self, key: &CharacterKey) -> Option<DominantTable> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        if entry.schema != SCHEMA_VERSION || entry.key != *key {
            return None;
        }
        if checksum(key, &entry.table) != entry.checksum {
            return None;
        }
        Some(entry.table)
    }

    fn write(&self, key: &CharacterKey, table: &DominantTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            schema: SCHEMA_VERSION,
            key: key.clone(),
            table: table.clone(),
            checksum: checksum(key, table),
        };
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&serde_json::to_vec(&entry).expect("entry serializes"))?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }
}

impl CharacterStore for DiskStore {
    fn load(&self, key: &CharacterKey) -> Option<DominantTable> {
        match self.read(key) {
            Some(t) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(t)
            }
            None => {
                if self.path(key).exists() {
                    self.rejected.fetch_add(1, Ordering::Relaxed);
                }
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn store(&self, key: &CharacterKey, table: &DominantTable) {
        if let Err(e) = self.write(key, table) {
            self.warn("write", e);
        }
    }
}

/// Cache directory: explicit flag, then the environment, then none.
pub fn resolve_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> CharacterKey {
        CharacterKey {
            fingerprint: "abc".into(),
            highest: vec![1, 0],
        }
    }

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let s = DiskStore::new(dir.path());
        assert!(s.load(&key()).is_none());
        let t: DominantTable = vec![(vec![1, 0], 1), (vec![0, 0], 2)];
        s.store(&key(), &t);
        assert_eq!(s.load(&key()), Some(t.clone()));
        // flip the payload without fixing the checksum
        let p = s.path(&key());
        let text = fs::read_to_string(&p).unwrap().replace("2]", "3]");
        fs::write(&p, text).unwrap();
        assert!(s.load(&key()).is_none());
        assert_eq!(s.rejected.load(Ordering::Relaxed), 1);
    }

    #[test]
    fn unwritable_directory_degrades() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        fs::write(&file, b"x").unwrap();
        let s = DiskStore::new(file.join("sub"));
        s.store(&key(), &vec![(vec![0, 0], 1)]);
        assert!(s.load(&key()).is_none());
    }
}
