//! On-disk result cache keyed by spec, method and crate version.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `explicit`, else `TUTTEFRAME_CACHE`, else a `tutteframe` directory under the user cache.
    pub fn locate(explicit: Option<&Path>) -> Cache {
        let dir = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os("TUTTEFRAME_CACHE").map(PathBuf::from))
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("tutteframe")))
            .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache").join("tutteframe")))
            .unwrap_or_else(|| std::env::temp_dir().join("tutteframe"));
        Cache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(spec: &str, method: &str) -> String {
        let mut h = Sha256::new();
        for part in [spec, method, env!("CARGO_PKG_VERSION")] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Write through a temporary file in the same directory, then rename over the target.
    pub fn put(&self, key: &str, value: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(value.to_string().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
