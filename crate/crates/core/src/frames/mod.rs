//! Raw frames, HSV color histograms, and the histogram fallback features.

pub mod histogram;
pub mod hsv;
pub mod manifest;
pub mod ppm;

use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::interchange::FeatureMatrix;

pub use histogram::{bin_index, compute_histogram, Histogram, BIN_COUNT};
pub use hsv::rgb_to_hsv;
pub use manifest::{load_manifest, write_manifest, FrameManifest};
pub use ppm::{decode_ppm, load_frame, write_frame, FrameImage, PpmError};

#[derive(Debug, thiserror::Error)]
pub enum FramesError {
    #[error("{}: {}", path.display(), if source.kind() == io::ErrorKind::NotFound { "not found".to_string() } else { source.to_string() })]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Ppm {
        path: PathBuf,
        #[source]
        source: PpmError,
    },
    #[error("{}: manifest lists no frames", .0.display())]
    EmptyManifest(PathBuf),
    #[error("no frames given")]
    NoFrames,
    #[error("shape error: {0}")]
    Shape(String),
}

impl FramesError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// One row per frame: the L1-normalized HSV histogram (d = 512).
pub fn fallback_features(frames: &[FrameImage]) -> Result<FeatureMatrix, FramesError> {
    if frames.is_empty() {
        return Err(FramesError::NoFrames);
    }
    let hists: Vec<Histogram> = frames.par_iter().map(compute_histogram).collect();
    Ok(histogram_features(&hists))
}

/// Same as [`fallback_features`] for histograms that are already computed.
pub fn histogram_features(hists: &[Histogram]) -> FeatureMatrix {
    let data: Vec<f32> = hists
        .iter()
        .flat_map(|h| h.normalized().map(|v| v as f32))
        .collect();
    FeatureMatrix::new(hists.len(), BIN_COUNT, data).expect("histogram rows are finite")
}

/// Loads every frame listed in the manifest and returns its histogram,
/// in manifest order.
pub fn load_histograms(manifest: &FrameManifest) -> Result<Vec<Histogram>, FramesError> {
    if manifest.is_empty() {
        return Err(FramesError::NoFrames);
    }
    manifest
        .paths()
        .par_iter()
        .map(|p| load_frame(p).map(|f| compute_histogram(&f)))
        .collect()
}
