//! Content-addressed result cache.
//!
//! Layout: `<root>/v<schema>/objects/<checksum>.json` holds documents and
//! `<root>/v<schema>/refs/<request>` holds the checksum answering a request.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use super::document::{ClassDocument, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: not a valid document: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: checksum does not match the content")]
    ChecksumMismatch { path: PathBuf },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

pub struct Cache {
    base: PathBuf,
}

/// `--cache-dir`, else `HIGGSMOT_CACHE_DIR`, else the user cache directory.
pub fn default_root(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os("HIGGSMOT_CACHE_DIR").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p).join("higgsmot"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("higgsmot"))
}

impl Cache {
    pub fn new(root: &Path) -> Cache {
        Cache::with_schema(root, SCHEMA_VERSION)
    }

    pub fn with_schema(root: &Path, schema: &str) -> Cache {
        Cache { base: root.join(format!("v{schema}")) }
    }

    fn object_path(&self, checksum: &str) -> PathBuf {
        self.base.join("objects").join(format!("{checksum}.json"))
    }

    fn ref_path(&self, key: &str) -> PathBuf {
        self.base.join("refs").join(key)
    }

    pub fn store(&self, doc: &ClassDocument) -> Result<PathBuf, CacheError> {
        let path = self.object_path(&doc.checksum);
        write_atomic(&path, doc.to_json().as_bytes())?;
        Ok(path)
    }

    pub fn load(&self, checksum: &str) -> Result<ClassDocument, CacheError> {
        let path = self.object_path(checksum);
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        let doc = ClassDocument::from_json(&text)
            .map_err(|e| CacheError::Parse { path: path.clone(), message: e.to_string() })?;
        if doc.checksum != checksum || !doc.checksum_matches() {
            return Err(CacheError::ChecksumMismatch { path });
        }
        Ok(doc)
    }

    /// Stores `doc` and points the request `key` at it.
    pub fn put(&self, key: &str, doc: &ClassDocument) -> Result<(), CacheError> {
        self.store(doc)?;
        write_atomic(&self.ref_path(key), doc.checksum.as_bytes())
    }

    /// The document answering `key`; `Ok(None)` when absent.
    pub fn get(&self, key: &str) -> Result<Option<ClassDocument>, CacheError> {
        let path = self.ref_path(key);
        let checksum = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        self.load(checksum.trim()).map(Some)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let name = path.file_name().unwrap().to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}
