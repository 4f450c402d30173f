//! On-disk result cache keyed by a SHA-256 content hash.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "PTL_CACHE_DIR";

/// Stores JSON results under `<dir>/<sha256>.json`. Writes go through a
/// temporary file and a rename, so concurrent writers of the same key
/// leave a complete file behind. Unreadable or corrupted entries are
/// reported with a warning and recomputed.
#[derive(Debug, Default)]
pub struct ResultCache {
    dir: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
    corrupted: AtomicU64,
}

impl ResultCache {
    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultCache { dir: Some(dir), ..Self::default() })
    }

    /// Cache in `dir`, else in `$PTL_CACHE_DIR`, else disabled.
    pub fn from_option_or_env(dir: Option<&Path>) -> io::Result<Self> {
        match dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Self::new(d),
            None => Ok(Self::disabled()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn corrupted(&self) -> u64 {
        self.corrupted.load(Ordering::Relaxed)
    }

    pub fn key<K: Serialize + ?Sized>(key: &K) -> String {
        let bytes = serde_json::to_vec(key).expect("cache keys serialize");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path_for(key)?;
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                self.corrupted.fetch_add(1, Ordering::Relaxed);
                return None;
            }
        };
        match serde_json::from_slice(&bytes) {
            Ok(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            Err(e) => {
                log::warn!("ignoring corrupted cache entry {}: {e}; recomputing", path.display());
                self.corrupted.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) {
        let Some(path) = self.path_for(key) else { return };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let result = serde_json::to_vec(value)
            .map_err(io::Error::other)
            .and_then(|bytes| fs::write(&tmp, bytes))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = result {
            log::warn!("could not write cache entry {}: {e}", path.display());
            let _ = fs::remove_file(&tmp);
        }
    }

    /// Returns the cached value for `key`, or computes and stores it.
    pub fn get_or_compute<K, T, E, F>(&self, key: &K, compute: F) -> Result<T, E>
    where
        K: Serialize + ?Sized,
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, E>,
    {
        if self.dir.is_none() {
            return compute();
        }
        let key = Self::key(key);
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = compute()?;
        self.put(&key, &v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path()).unwrap();
        let v: Result<u32, ()> = cache.get_or_compute("k", || Ok(7));
        assert_eq!(v, Ok(7));
        let v: Result<u32, ()> = cache.get_or_compute("k", || Ok(8));
        assert_eq!(v, Ok(7));
        assert_eq!(cache.hits(), 1);

        let path = cache.path_for(&ResultCache::key("k")).unwrap();
        fs::write(&path, b"{not json").unwrap();
        let v: Result<u32, ()> = cache.get_or_compute("k", || Ok(9));
        assert_eq!(v, Ok(9));
        assert_eq!(cache.corrupted(), 1);
        assert_eq!(cache.get::<u32>(&ResultCache::key("k")), Some(9));
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = ResultCache::disabled();
        let mut calls = 0;
        for _ in 0..2 {
            let _: Result<(), ()> = cache.get_or_compute("k", || {
                calls += 1;
                Ok(())
            });
        }
        assert_eq!(calls, 2);
    }
}
