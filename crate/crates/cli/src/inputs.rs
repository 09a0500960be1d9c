//! Input loading with errors prefixed by the input they came from, e.g.
//! `shots: not found (path/to/shots.json)`.

use std::path::Path;

use anyhow::{anyhow, Error, Result};
use seqkey::frames::{load_histograms, load_manifest, FramesError, Histogram};
use seqkey::interchange::{load_features, load_keyframes, load_shots, InterchangeError};
use seqkey::{FeatureMatrix, KeyframeSet, ShotList};

fn interchange(label: &str, path: &Path, err: InterchangeError) -> Error {
    if err.is_not_found() {
        anyhow!("{label}: not found ({})", path.display())
    } else {
        anyhow!("{label}: {err}")
    }
}

pub fn features(path: &Path) -> Result<FeatureMatrix> {
    load_features(path).map_err(|e| interchange("features", path, e))
}

pub fn shots(path: &Path) -> Result<ShotList> {
    load_shots(path).map_err(|e| interchange("shots", path, e))
}

pub fn keyframes(label: &str, path: &Path) -> Result<KeyframeSet> {
    load_keyframes(path).map_err(|e| interchange(label, path, e))
}

pub fn histograms(manifest: &Path) -> Result<Vec<Histogram>> {
    let frames_err = |e: FramesError| match e {
        FramesError::Io { path, source } if source.kind() == std::io::ErrorKind::NotFound => {
            anyhow!("frames: not found ({})", path.display())
        }
        other => anyhow!("frames: {other}"),
    };
    let manifest = load_manifest(manifest).map_err(frames_err)?;
    load_histograms(&manifest).map_err(frames_err)
}
