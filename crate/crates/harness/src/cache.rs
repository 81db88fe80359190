use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use dkoszul_core::exact::SparseMap;
use dkoszul_core::koszul::{self, DiffKind, Spot, CALIBRATION};
use dkoszul_core::superspace::SuperSpace;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::HarnessError;

pub const CACHE_ENV: &str = "DKOSZUL_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".dkoszul-cache";

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: String,
    sha256: String,
    payload: String,
}

fn checksum(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Checksummed key-value store of JSON payloads, one file per key.
///
/// Writes go to a temporary file in the same directory followed by a rename,
/// so a reader never sees a partial entry.
#[derive(Debug)]
pub struct Cache {
    root: PathBuf,
    corrupted: AtomicUsize,
}

impl Cache {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, HarnessError> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| HarnessError::io(&root, e))?;
        Ok(Cache { root, corrupted: AtomicUsize::new(0) })
    }

    /// `$DKOSZUL_CACHE_DIR` if set, else `dir`, else [`DEFAULT_DIR`].
    pub fn resolve_dir(dir: Option<&Path>) -> PathBuf {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => dir.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR)),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Entries rejected by checksum or key mismatch since opening.
    pub fn corrupted(&self) -> usize {
        self.corrupted.load(Ordering::Relaxed)
    }

    pub fn path_of(&self, key: &str) -> PathBuf {
        let (ns, _) = key.split_once('/').unwrap_or(("misc", key));
        self.root.join(ns).join(format!("{}.json", &checksum(key)[..32]))
    }

    /// Payload stored under `key`; `None` if absent or corrupted.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path_of(key)).ok()?;
        match serde_json::from_str::<Envelope>(&text) {
            Ok(env) if env.key == key && checksum(&env.payload) == env.sha256 => Some(env.payload),
            _ => {
                self.corrupted.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<(), HarnessError> {
        let path = self.path_of(key);
        let dir = path.parent().expect("entry has a parent");
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        let env = Envelope { key: key.into(), sha256: checksum(payload), payload: payload.into() };
        let body = serde_json::to_string(&env)?;
        let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"), std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(|e| HarnessError::io(&tmp, e))?;
        f.write_all(body.as_bytes()).map_err(|e| HarnessError::io(&tmp, e))?;
        f.sync_all().map_err(|e| HarnessError::io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| HarnessError::io(&path, e))
    }

    /// Cached matrix of a differential, computing and storing it on a miss.
    ///
    /// A hit is also seeded into the in-memory memo of the core crate.
    pub fn differential(&self, space: SuperSpace, kind: DiffKind, sub: Spot) -> Result<SparseMap, HarnessError> {
        let key = matrix_key(space, kind, sub);
        if let Some(payload) = self.get(&key) {
            if let Ok(m) = SparseMap::from_json(&payload) {
                if koszul::preload_differential(space, kind, sub, m.clone()).is_ok() {
                    return Ok(m);
                }
            }
            self.corrupted.fetch_add(1, Ordering::Relaxed);
        }
        let m = (*koszul::differential(space, kind, sub)?).clone();
        self.put(&key, &m.to_json()?)?;
        Ok(m)
    }
}

pub fn matrix_key(space: SuperSpace, kind: DiffKind, sub: Spot) -> String {
    format!("matrix/{CALIBRATION}/{space}/{kind}/{sub}")
}

pub fn report_key(digest: &str) -> String {
    format!("report/{digest}")
}
