//! Frame manifest: a text file listing one frame path per line, in temporal
//! order. Blank lines and lines starting with `#` are ignored; relative paths
//! resolve against the manifest's directory.

use std::fs;
use std::path::{Path, PathBuf};

use super::FramesError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameManifest {
    paths: Vec<PathBuf>,
}

impl FrameManifest {
    pub fn new(paths: Vec<PathBuf>) -> Self {
        Self { paths }
    }

    /// Parses manifest text, resolving relative entries against `base`.
    pub fn parse(text: &str, base: &Path) -> Self {
        let paths = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let p = Path::new(l);
                if p.is_absolute() {
                    p.to_path_buf()
                } else {
                    base.join(p)
                }
            })
            .collect();
        Self { paths }
    }

    pub fn paths(&self) -> &[PathBuf] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<FrameManifest, FramesError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FramesError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let manifest = FrameManifest::parse(&text, base);
    if manifest.is_empty() {
        return Err(FramesError::EmptyManifest(path.to_path_buf()));
    }
    Ok(manifest)
}

/// Writes `entries` verbatim, one per line.
pub fn write_manifest(entries: &[String], path: impl AsRef<Path>) -> Result<(), FramesError> {
    let path = path.as_ref();
    let mut text = entries.join("\n");
    text.push('\n');
    fs::write(path, text).map_err(|e| FramesError::io(path, e))
}
