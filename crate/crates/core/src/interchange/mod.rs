//! On-disk artifacts shared with the frame/feature extractors.
//!
//! * feature matrices: binary `LMKF` files (see [`features`])
//! * shot lists: JSON array of `{"start": s, "end": e}` records, inclusive
//! * keyframe sets: JSON object `{"indices": [...], "per_shot": [[...], ...]}`

pub mod features;
pub mod keyframes;
pub mod shots;

use std::io;
use std::path::{Path, PathBuf};

pub use features::{
    decode_features, load_features, write_features, FeatureFormatError, FeatureMatrix,
};
pub use keyframes::{load_keyframes, write_keyframes, KeyframeError, KeyframeSet};
pub use shots::{load_shots, write_shots, Shot, ShotList, ShotListError};

#[derive(Debug, thiserror::Error)]
pub enum InterchangeError {
    #[error("{}: {}", path.display(), describe_io(source))]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Features {
        path: PathBuf,
        #[source]
        source: FeatureFormatError,
    },
    #[error("{}: {source}", path.display())]
    Shots {
        path: PathBuf,
        #[source]
        source: ShotListError,
    },
    #[error("{}: {source}", path.display())]
    Keyframes {
        path: PathBuf,
        #[source]
        source: KeyframeError,
    },
    #[error("shape error: {0}")]
    Shape(String),
}

fn describe_io(err: &io::Error) -> String {
    match err.kind() {
        io::ErrorKind::NotFound => "not found".to_string(),
        _ => err.to_string(),
    }
}

impl InterchangeError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// True when the underlying cause is a missing file.
    pub fn is_not_found(&self) -> bool {
        matches!(self, Self::Io { source, .. } if source.kind() == io::ErrorKind::NotFound)
    }
}
