use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linkpat::{Kind, LinkPattern};
use crate::transfer::{base_value, eigenvector_any, rotated_base, EigvecRecord, Param};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "O1LOOP_CACHE_DIR";

const SCHEMA: &str = "o1loop.cache/1";

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    digest: String,
    record: EigvecRecord,
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Content-addressed store of ground-state records.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `$O1LOOP_CACHE_DIR` if set, else `dir`, else no cache.
    pub fn resolve(dir: Option<&Path>) -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(PathBuf::from(d)).map(Some),
            _ => dir.map(Cache::new).transpose(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hash of the inputs that determine a record.
    pub fn key(kind: Kind, z: &[Param], t: &Param) -> String {
        let v = serde_json::json!({ "schema": SCHEMA, "kind": kind, "size": z.len(), "z": z, "t": t });
        sha_hex(v.to_string().as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stores a record; the write is atomic.
    pub fn put(&self, rec: &EigvecRecord) -> Result<PathBuf> {
        let key = Cache::key(rec.kind, &rec.z, &rec.t);
        let digest = sha_hex(serde_json::to_string(rec)?.as_bytes());
        let entry = Entry {
            schema: SCHEMA.into(),
            key: key.clone(),
            digest,
            record: rec.clone(),
        };
        let path = self.path(&key);
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads and re-validates the record stored under `key`.
    pub fn load(&self, key: &str) -> Result<Option<EigvecRecord>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| Error::CacheCorruption {
            path: path.display().to_string(),
            reason,
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| corrupt(format!("unreadable: {e}")))?;
        if entry.schema != SCHEMA {
            return Err(corrupt(format!("schema {}", entry.schema)));
        }
        let rec = entry.record;
        if sha_hex(serde_json::to_string(&rec)?.as_bytes()) != entry.digest {
            return Err(corrupt("digest mismatch".into()));
        }
        if entry.key != key || Cache::key(rec.kind, &rec.z, &rec.t) != key {
            return Err(corrupt("key does not match the record".into()));
        }
        check_normalization(&rec).map_err(corrupt)?;
        Ok(Some(rec))
    }

    pub fn get(&self, kind: Kind, z: &[Param], t: &Param) -> Result<Option<EigvecRecord>> {
        self.load(&Cache::key(kind, z, t))
    }

    /// Cached record, computed and stored on a miss.
    pub fn get_or_compute(&self, kind: Kind, z: &[Param], t: &Param, exec: Exec) -> Result<EigvecRecord> {
        if let Some(r) = self.get(kind, z, t)? {
            return Ok(r);
        }
        let r = eigenvector_any(kind, z, Some(t), exec)?;
        self.put(&r)?;
        Ok(r)
    }

    /// Keys of every stored record.
    pub fn keys(&self) -> Result<Vec<String>> {
        let mut v = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let name = e?.file_name().to_string_lossy().into_owned();
            if let Some(k) = name.strip_suffix(".json") {
                if !k.starts_with('.') {
                    v.push(k.to_string());
                }
            }
        }
        v.sort();
        Ok(v)
    }

    /// Loads every record; the first corrupted one is an error.
    pub fn verify(&self) -> Result<usize> {
        let keys = self.keys()?;
        for k in &keys {
            self.load(k)?;
        }
        Ok(keys.len())
    }

    pub fn clear(&self) -> Result<usize> {
        let keys = self.keys()?;
        for k in &keys {
            fs::remove_file(self.path(k))?;
        }
        Ok(keys.len())
    }
}

/// The pinned component must equal its closed form at the record's point.
fn check_normalization(rec: &EigvecRecord) -> std::result::Result<(), String> {
    let basis = rec.basis().map_err(|e| e.to_string())?;
    if rec.components.len() != basis.dim() {
        return Err("wrong number of components".into());
    }
    let (pattern, value) = match rec.normalization.strip_prefix("rotated-base:") {
        None if rec.normalization == "base" => {
            let p = LinkPattern::base(rec.kind, rec.size).map_err(|e| e.to_string())?;
            (p, base_value(rec.kind, &rec.z))
        }
        Some(k) => {
            let k: usize = k.parse().map_err(|_| format!("bad normalization {}", rec.normalization))?;
            rotated_base(rec.kind, &rec.z, k).map_err(|e| e.to_string())?
        }
        None => return Err(format!("unknown normalization {}", rec.normalization)),
    };
    if rec.components[basis.position(&pattern)] != value {
        return Err("base component does not match its closed form".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::homogeneous;

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let rec = homogeneous(Kind::Odd, 7, Exec::Parallel).unwrap();
        cache.put(&rec).unwrap();
        let back = cache.get(Kind::Odd, &rec.z, &rec.t).unwrap().unwrap();
        assert_eq!(back, rec);
        assert_eq!(cache.verify().unwrap(), 1);
    }

    #[test]
    fn key_depends_on_t() {
        let z = vec![Param::int(1); 3];
        assert_ne!(Cache::key(Kind::Odd, &z, &Param::int(2)), Cache::key(Kind::Odd, &z, &Param::int(3)));
        assert_ne!(Cache::key(Kind::Odd, &z, &Param::int(2)), Cache::key(Kind::Odd, &z[..1], &Param::int(2)));
    }

    #[test]
    fn corruption_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let rec = homogeneous(Kind::Odd, 3, Exec::Sequential).unwrap();
        let path = cache.put(&rec).unwrap();
        let key = Cache::key(rec.kind, &rec.z, &rec.t);
        let text = fs::read_to_string(&path).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["digest"] = serde_json::json!("00");
        fs::write(&path, v.to_string()).unwrap();
        assert!(matches!(cache.load(&key), Err(Error::CacheCorruption { .. })));
        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(cache.load(&key), Err(Error::CacheCorruption { .. })));
    }

    #[test]
    fn renormalized_record_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let mut rec = homogeneous(Kind::Punctured, 4, Exec::Sequential).unwrap();
        for c in rec.components.iter_mut() {
            *c = c.clone() + c.clone();
        }
        cache.put(&rec).unwrap();
        assert!(matches!(cache.get(rec.kind, &rec.z, &rec.t), Err(Error::CacheCorruption { .. })));
    }

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let z = vec![Param::int(1); 4];
        assert!(cache.get(Kind::Even, &z, &Param::int(2)).unwrap().is_none());
        let a = cache.get_or_compute(Kind::Even, &z, &Param::int(2), Exec::Sequential).unwrap();
        assert_eq!(cache.keys().unwrap().len(), 1);
        assert_eq!(cache.get_or_compute(Kind::Even, &z, &Param::int(2), Exec::Sequential).unwrap(), a);
    }
}
