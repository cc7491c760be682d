//! On-disk cache for witness searches, keyed by a digest of the colouring
//! and the search bounds. Entries are only ever trusted after the caller
//! re-verifies them.

use crate::report::{digest, write_atomic};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use std::env;
use std::fs;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "DUALRAMSEY_CACHE";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// The cache named by the environment, if any.
    pub fn from_env() -> Option<Cache> {
        env::var_os(CACHE_ENV).filter(|d| !d.is_empty()).map(|d| Cache { dir: PathBuf::from(d) })
    }

    fn path(&self, key: &Value) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key)))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &Value) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Best effort: a cache that cannot be written is not an error.
    pub fn store<T: Serialize>(&self, key: &Value, value: &T) {
        if let Ok(bytes) = serde_json::to_vec(value) {
            let _ = write_atomic(&self.path(key), &bytes);
        }
    }
}
