//! Read-through cache of computed polynomials, one JSON file per entry.
//!
//! Keys carry the tool version, so a version bump never reads stale entries.
//! Writes go to a temporary file in the same directory and are renamed into
//! place. Any I/O problem downgrades to a warning.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const PREFIX: &str = "panehr-";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    /// Polynomial in its JSON form.
    pub polynomial: String,
    pub version: String,
    pub timestamp: u64,
}

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub current_version: usize,
    pub bytes: u64,
}

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: {msg}");
}

/// `$PANEHR_CACHE_DIR` is handled by the argument parser; this is the
/// fallback when it is unset.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return Some(PathBuf::from(x).join("panehr"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("panehr"))
}

/// Full key, e.g. `0.1.0/panhandle/r=1,s=1,n=2`.
pub fn key(family: &str, params: &str) -> String {
    format!("{VERSION}/{family}/{params}")
}

fn file_name(key: &str) -> String {
    let safe: String = key
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '=' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{PREFIX}{safe}.json")
}

fn is_ours(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with(PREFIX) && (n.ends_with(".json") || n.ends_with(".tmp")))
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// A cache rooted at `dir`, or a disabled one (with a warning) if the
    /// directory cannot be created.
    pub fn open(dir: PathBuf) -> Self {
        match fs::create_dir_all(&dir) {
            Ok(()) => Cache { dir: Some(dir) },
            Err(e) => {
                warn(format!(
                    "cache directory {} is unusable ({e}); continuing without cache",
                    dir.display()
                ));
                Cache::disabled()
            }
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// The stored polynomial JSON for `key`. Unreadable or mismatched entries
    /// are reported and treated as misses.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.dir.as_ref()?.join(file_name(key));
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(e) if e.key == key && e.version == VERSION => {
                match panehr::Polynomial::from_json(&e.polynomial) {
                    Ok(_) => Some(e.polynomial),
                    Err(err) => {
                        warn(format!(
                            "ignoring corrupt cache entry {}: {err}",
                            path.display()
                        ));
                        None
                    }
                }
            }
            Ok(_) => {
                warn(format!(
                    "ignoring cache entry {} with a different key",
                    path.display()
                ));
                None
            }
            Err(err) => {
                warn(format!(
                    "ignoring corrupt cache entry {}: {err}",
                    path.display()
                ));
                None
            }
        }
    }

    /// Store `polynomial` under `key`; on failure, warn and carry on.
    pub fn put(&mut self, key: &str, polynomial: &str) {
        let Some(dir) = self.dir.clone() else {
            return;
        };
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = CacheEntry {
            key: key.to_string(),
            polynomial: polynomial.to_string(),
            version: VERSION.to_string(),
            timestamp,
        };
        let body = serde_json::to_string_pretty(&entry).expect("entry serializes");
        let target = dir.join(file_name(key));
        let tmp = dir.join(format!("{PREFIX}{}-{timestamp}.tmp", std::process::id()));
        let result = fs::File::create(&tmp)
            .and_then(|mut f| {
                f.write_all(body.as_bytes())?;
                f.sync_all()
            })
            .and_then(|()| fs::rename(&tmp, &target));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            warn(format!(
                "cannot write cache entry in {} ({e}); continuing without cache",
                dir.display()
            ));
            self.dir = None;
        }
    }

    pub fn stats(&self) -> std::io::Result<CacheStats> {
        let mut stats = CacheStats::default();
        let Some(dir) = &self.dir else {
            return Ok(stats);
        };
        for item in fs::read_dir(dir)? {
            let path = item?.path();
            if !is_ours(&path) || path.extension().is_some_and(|x| x == "tmp") {
                continue;
            }
            stats.entries += 1;
            stats.bytes += fs::metadata(&path)?.len();
            let current = fs::read_to_string(&path)
                .ok()
                .and_then(|t| serde_json::from_str::<CacheEntry>(&t).ok())
                .is_some_and(|e| e.version == VERSION);
            if current {
                stats.current_version += 1;
            }
        }
        Ok(stats)
    }

    /// Remove every entry (and stray temporary file); returns how many files went.
    pub fn clear(&self) -> std::io::Result<usize> {
        let Some(dir) = &self.dir else {
            return Ok(0);
        };
        let mut removed = 0;
        for item in fs::read_dir(dir)? {
            let path = item?.path();
            if is_ours(&path) {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
