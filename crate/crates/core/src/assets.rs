//! Lookup of external files (OBJ models) referenced by scripts.

use std::collections::BTreeMap;
use std::path::{Component, Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssetError {
    #[error("asset '{0}' not found")]
    NotFound(String),
    #[error("invalid asset name '{0}'")]
    InvalidName(String),
    #[error("cannot read asset '{name}': {message}")]
    Io { name: String, message: String },
}

/// Maps a relative asset name such as `"bunny.obj"` to its bytes.
pub trait AssetResolver {
    fn resolve(&self, name: &str) -> Result<Vec<u8>, AssetError>;
}

/// Resolver that knows no assets.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoAssets;

impl AssetResolver for NoAssets {
    fn resolve(&self, name: &str) -> Result<Vec<u8>, AssetError> {
        Err(AssetError::NotFound(name.to_string()))
    }
}

/// In-memory name to bytes table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MemoryAssets {
    files: BTreeMap<String, Vec<u8>>,
}

impl MemoryAssets {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) {
        self.files.insert(name.into(), bytes.into());
    }

    pub fn with(mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        self.insert(name, bytes);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }
}

impl AssetResolver for MemoryAssets {
    fn resolve(&self, name: &str) -> Result<Vec<u8>, AssetError> {
        self.files
            .get(name)
            .cloned()
            .ok_or_else(|| AssetError::NotFound(name.to_string()))
    }
}

/// Resolver backed by a directory. Names must stay inside it: absolute
/// paths and `..` components are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirAssets {
    root: PathBuf,
}

impl DirAssets {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }
}

fn is_contained(name: &str) -> bool {
    let path = Path::new(name);
    !name.is_empty()
        && path
            .components()
            .all(|c| matches!(c, Component::Normal(_) | Component::CurDir))
}

impl AssetResolver for DirAssets {
    fn resolve(&self, name: &str) -> Result<Vec<u8>, AssetError> {
        if !is_contained(name) {
            return Err(AssetError::InvalidName(name.to_string()));
        }
        let path = self.root.join(name);
        match std::fs::read(&path) {
            Ok(bytes) => Ok(bytes),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(AssetError::NotFound(name.to_string())),
            Err(e) => Err(AssetError::Io {
                name: name.to_string(),
                message: e.to_string(),
            }),
        }
    }
}

impl<T: AssetResolver + ?Sized> AssetResolver for &T {
    fn resolve(&self, name: &str) -> Result<Vec<u8>, AssetError> {
        (**self).resolve(name)
    }
}
