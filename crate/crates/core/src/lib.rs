//! Sequential keyframe extraction.
//!
//! A video arrives as per-frame feature vectors, a shot list, and raw
//! frames. Each shot is clustered adaptively ([`clustering`]), the frame
//! nearest every cluster center becomes a candidate, near-duplicate and
//! solid-color candidates are pruned by HSV histogram similarity
//! ([`redundancy`]), and the survivors of all shots are concatenated in
//! order ([`pipeline`]). [`metrics`] scores a summary against benchmark
//! keyframes.

pub mod baseline;
pub mod clustering;
pub mod frames;
pub mod interchange;
pub mod metrics;
pub mod pipeline;
pub mod redundancy;
pub mod synth;

use std::io;
use std::path::{Path, PathBuf};

pub use clustering::{Clustering, ClusteringError, Points};
pub use frames::{FrameImage, FramesError, Histogram};
pub use interchange::{FeatureMatrix, InterchangeError, KeyframeSet, ShotList};
pub use metrics::{EvalReport, MetricsError};
pub use pipeline::{PipelineConfig, PipelineError, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Interchange(#[from] InterchangeError),
    #[error(transparent)]
    Frames(#[from] FramesError),
    #[error(transparent)]
    Clustering(#[from] ClusteringError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Shots(#[from] interchange::ShotListError),
    #[error(transparent)]
    Keyframes(#[from] interchange::KeyframeError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
