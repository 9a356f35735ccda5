use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::LabError;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    digest: String,
    key: String,
    value: Value,
}

/// Append-only JSONL store of results keyed by configuration digest and a
/// canonical serialization of the object.
///
/// Later entries for the same key shadow earlier ones when loading, so a
/// store can be appended to by successive runs and read back consistently.
#[derive(Debug)]
pub struct ResultStore {
    path: PathBuf,
    entries: BTreeMap<(String, String), Value>,
    writer: File,
}

impl ResultStore {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, LabError> {
        let path = path.as_ref().to_path_buf();
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut entries = BTreeMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: Entry = serde_json::from_str(&line)?;
                entries.insert((e.digest, e.key), e.value);
            }
        }
        let writer = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(ResultStore {
            path,
            entries,
            writer,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, digest: &str, key: &str) -> Option<&Value> {
        self.entries.get(&(digest.to_string(), key.to_string()))
    }

    pub fn put(&mut self, digest: &str, key: &str, value: Value) -> Result<(), LabError> {
        let e = Entry {
            digest: digest.into(),
            key: key.into(),
            value,
        };
        let mut line = serde_json::to_string(&e)?;
        line.push('\n');
        self.writer.write_all(line.as_bytes())?;
        self.writer.flush()?;
        self.entries.insert((e.digest, e.key), e.value);
        Ok(())
    }

    /// Returns the cached value, computing and appending it if absent.
    pub fn get_or_insert_with<T, F>(&mut self, digest: &str, key: &str, f: F) -> Result<T, LabError>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> Result<T, LabError>,
    {
        if let Some(v) = self.get(digest, key) {
            return Ok(serde_json::from_value(v.clone())?);
        }
        let t = f()?;
        self.put(digest, key, serde_json::to_value(&t)?)?;
        Ok(t)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.keys().map(|(d, k)| (d.as_str(), k.as_str()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_survive_reopening() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("store.jsonl");
        {
            let mut s = ResultStore::open(&p).unwrap();
            s.put("d", "k", serde_json::json!(3)).unwrap();
            let v: u32 = s.get_or_insert_with("d", "j", || Ok(5)).unwrap();
            assert_eq!(v, 5);
        }
        let mut s = ResultStore::open(&p).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get("d", "k"), Some(&serde_json::json!(3)));
        let v: u32 = s.get_or_insert_with("d", "j", || panic!("cached")).unwrap();
        assert_eq!(v, 5);
    }
}
