//! File cache under `$OPERADLAB_CACHE`, keyed by the SHA-256 of the
//! presentation and the cap.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use operadlab::Result;

pub const ENV: &str = "OPERADLAB_CACHE";

pub fn key(kind: &str, material: &str, cap: usize) -> String {
    let mut h = Sha256::new();
    h.update(kind.as_bytes());
    h.update([0]);
    h.update(material.as_bytes());
    h.update([0]);
    h.update(cap.to_le_bytes());
    format!("{kind}-{:x}", h.finalize())
}

fn dir() -> Option<PathBuf> {
    std::env::var_os(ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Returns the cached value for `key`, computing and storing it on a miss.
/// Unreadable or stale entries are recomputed; write failures are ignored.
pub fn cached<T: Serialize + DeserializeOwned>(key: &str, compute: impl FnOnce() -> Result<T>) -> Result<T> {
    let Some(dir) = dir() else {
        return compute();
    };
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str(&text) {
            return Ok(v);
        }
    }
    let v = compute()?;
    if fs::create_dir_all(&dir).is_ok() {
        let tmp = dir.join(format!("{key}.json.tmp{}", std::process::id()));
        if fs::write(&tmp, serde_json::to_string(&v).expect("cache entry serializes")).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_cap_and_material() {
        let a = key("soul", "Ass", 5);
        assert_eq!(a, key("soul", "Ass", 5));
        assert_ne!(a, key("soul", "Ass", 6));
        assert_ne!(a, key("soul", "Com", 5));
        assert!(a.starts_with("soul-") && a.len() == 5 + 64);
    }
}
