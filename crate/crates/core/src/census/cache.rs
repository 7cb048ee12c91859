//! JSON persistence of census tables so repeated runs only extend them.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::CensusTable;
use crate::error::{Error, Result};

pub const CACHE_VERSION: u32 = 1;

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "RATKNOT_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    values: Vec<String>,
}

pub fn default_cache_path() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => std::env::temp_dir().join("ratknot-census.json"),
    }
}

fn read(path: &Path) -> Result<CensusTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    if file.version != CACHE_VERSION {
        return Err(Error::Cache(format!("{}: unsupported version {}", path.display(), file.version)));
    }
    let values = file
        .values
        .iter()
        .map(|v| v.parse::<BigInt>().map_err(|_| Error::Cache(format!("{}: bad entry {v:?}", path.display()))))
        .collect::<Result<Vec<_>>>()?;
    let table = CensusTable::from_values(values);
    if let Some(k) = table.first_inconsistency() {
        return Err(Error::Cache(format!("{}: recursion fails at k = {k}", path.display())));
    }
    Ok(table)
}

fn write(path: &Path, table: &CensusTable) -> Result<()> {
    let file = CacheFile { version: CACHE_VERSION, values: table.values().iter().map(ToString::to_string).collect() };
    let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    }
    // write then rename so readers never see a partial file
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
}

/// Table through `max_k`, reusing and extending the cache at `path`.
///
/// Missing or unreadable caches are rebuilt; the boolean reports whether the
/// cached prefix was used.
pub fn load_or_compute(path: &Path, max_k: u64) -> Result<(CensusTable, bool)> {
    let (mut table, hit) = match read(path) {
        Ok(t) => (t, true),
        Err(_) => (CensusTable::from_values(vec![]), false),
    };
    if table.len() < max_k {
        table.extend_to(max_k);
        write(path, &table)?;
    }
    Ok((table.truncated(max_k), hit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_extension() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.json");
        let (t, hit) = load_or_compute(&path, 50).unwrap();
        assert!(!hit);
        assert_eq!(t.len(), 50);
        let (t2, hit) = load_or_compute(&path, 20).unwrap();
        assert!(hit);
        assert_eq!(t2, t.truncated(20));
        let (t3, _) = load_or_compute(&path, 80).unwrap();
        assert_eq!(t3.truncated(50), t);
        assert_eq!(read(&path).unwrap().len(), 80);
    }

    #[test]
    fn corrupt_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.json");
        fs::write(&path, r#"{"version":1,"values":["2","4","5"]}"#).unwrap();
        assert!(matches!(read(&path), Err(Error::Cache(_))));
        let (t, hit) = load_or_compute(&path, 3).unwrap();
        assert!(!hit);
        assert_eq!(t.d(3), &BigInt::from(4));
        fs::write(&path, r#"{"version":9,"values":[]}"#).unwrap();
        assert!(read(&path).is_err());
    }
}
