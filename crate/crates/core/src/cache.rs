//! Optional on-disk memo of membership decisions.
//!
//! Format: one decision per line, `v1|<ring>|<m>|<n>|<kind>\t<0|1>`, written
//! back sorted so the file is diff-stable. The cache is purely an
//! accelerator: a missing or absent file changes no output, and entries are
//! keyed by canonical module literals so they are universe-independent.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const CACHE_DIR_ENV: &str = "PROFILIUM_CACHE_DIR";

#[derive(Debug)]
pub struct DecisionCache {
    path: PathBuf,
    entries: BTreeMap<String, bool>,
    dirty: bool,
}

impl DecisionCache {
    /// Loads the cache at `path`, tolerating a missing file. Malformed lines
    /// are dropped (the cache is disposable).
    pub fn open(path: &Path) -> io::Result<DecisionCache> {
        let mut entries = BTreeMap::new();
        match fs::read_to_string(path) {
            Ok(text) => {
                for line in text.lines() {
                    let Some((key, value)) = line.rsplit_once('\t') else { continue };
                    if !key.starts_with("v1|") {
                        continue;
                    }
                    match value {
                        "0" => entries.insert(key.to_string(), false),
                        "1" => entries.insert(key.to_string(), true),
                        _ => None,
                    };
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(DecisionCache { path: path.to_path_buf(), entries, dirty: false })
    }

    pub fn key(ring: &str, m: &str, n: &str, kind: &str) -> String {
        format!("v1|{ring}|{m}|{n}|{kind}")
    }

    pub fn get(&self, key: &str) -> Option<bool> {
        self.entries.get(key).copied()
    }

    pub fn put(&mut self, key: String, value: bool) {
        if self.entries.insert(key, value) != Some(value) {
            self.dirty = true;
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes all entries back, sorted by key. No-op when nothing changed.
    pub fn flush(&mut self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        let mut out = String::new();
        for (key, value) in &self.entries {
            out.push_str(key);
            out.push('\t');
            out.push(if *value { '1' } else { '0' });
            out.push('\n');
        }
        fs::write(&self.path, out)?;
        self.dirty = false;
        Ok(())
    }
}

/// Resolves the effective cache file: the `--cache` path, with its directory
/// replaced by `PROFILIUM_CACHE_DIR` when that is set. No flag, no cache.
pub fn resolve_cache_path(flag: Option<&Path>, env_dir: Option<&str>) -> Option<PathBuf> {
    let flag = flag?;
    match env_dir {
        Some(dir) if !dir.is_empty() => {
            let name = flag.file_name().unwrap_or_else(|| flag.as_os_str());
            Some(Path::new(dir).join(name))
        }
        _ => Some(flag.to_path_buf()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let mut cache = DecisionCache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache.put(DecisionCache::key("Z", "Z/4", "Z/3", "sp"), true);
        cache.put(DecisionCache::key("Z", "Z/4", "Z/2", "sp"), false);
        cache.flush().unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, "v1|Z|Z/4|Z/2|sp\t0\nv1|Z|Z/4|Z/3|sp\t1\n");
        let reloaded = DecisionCache::open(&path).unwrap();
        assert_eq!(reloaded.get("v1|Z|Z/4|Z/3|sp"), Some(true));
        assert_eq!(reloaded.get("v1|Z|Z/4|Z/2|sp"), Some(false));
        assert_eq!(reloaded.len(), 2);
    }

    #[test]
    fn malformed_lines_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        fs::write(&path, "garbage\nv0|old|key\t1\nv1|Z|Z|Z|sp\t1\nv1|Z|a|b|sp\tx\n").unwrap();
        let cache = DecisionCache::open(&path).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.get("v1|Z|Z|Z|sp"), Some(true));
    }

    #[test]
    fn env_dir_overrides_the_flag_directory() {
        let flag = Path::new("/tmp/somewhere/memo.txt");
        assert_eq!(
            resolve_cache_path(Some(flag), Some("/var/cache")),
            Some(PathBuf::from("/var/cache/memo.txt"))
        );
        assert_eq!(resolve_cache_path(Some(flag), None), Some(flag.to_path_buf()));
        assert_eq!(resolve_cache_path(None, Some("/var/cache")), None);
    }

    #[test]
    fn rewriting_identical_values_keeps_the_file_clean() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let mut cache = DecisionCache::open(&path).unwrap();
        cache.put("v1|Z|Z|Z|sp".into(), true);
        cache.flush().unwrap();
        let before = fs::metadata(&path).unwrap().modified().unwrap();
        let mut cache = DecisionCache::open(&path).unwrap();
        cache.put("v1|Z|Z|Z|sp".into(), true);
        cache.flush().unwrap();
        let after = fs::metadata(&path).unwrap().modified().unwrap();
        assert_eq!(before, after);
    }
}
