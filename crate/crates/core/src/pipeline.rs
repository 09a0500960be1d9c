//! End-to-end keyframe extraction for one video: per-shot adaptive
//! clustering, candidate selection, redundancy elimination, and
//! concatenation in shot order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{adaptive_cluster, select_candidates, ClusteringError, Points};
use crate::frames::Histogram;
use crate::interchange::{FeatureMatrix, KeyframeError, KeyframeSet, Shot, ShotList};
use crate::redundancy::{eliminate_with, DEFAULT_MIN_NONZERO_BINS, DEFAULT_THRESHOLD};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Clustering(#[from] ClusteringError),
    #[error(transparent)]
    Keyframes(#[from] KeyframeError),
}

/// How equal silhouette scores at different `k` are resolved.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SilhouetteTieRule {
    #[default]
    PreferLargerK,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Pairs at or above this histogram similarity are treated as duplicates.
    pub redundancy_threshold: f64,
    /// Frames with fewer populated histogram bins are dropped as uninformative.
    pub min_nonzero_bins: usize,
    /// Scale feature rows to unit L2 norm before clustering.
    pub l2_normalize_features: bool,
    pub sc_tie_rule: SilhouetteTieRule,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            redundancy_threshold: DEFAULT_THRESHOLD,
            min_nonzero_bins: DEFAULT_MIN_NONZERO_BINS,
            l2_normalize_features: true,
            sc_tie_rule: SilhouetteTieRule::PreferLargerK,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let t = self.redundancy_threshold;
        if !(t > 0.0 && t <= 1.0) {
            return Err(PipelineError::Config(format!(
                "redundancy_threshold must be in (0, 1], got {t}"
            )));
        }
        if self.min_nonzero_bins == 0 {
            return Err(PipelineError::Config(
                "min_nonzero_bins must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// What happened inside one shot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShotReport {
    pub start: usize,
    pub end: usize,
    /// Number of clusters chosen.
    pub k: usize,
    /// Silhouette of the chosen partition; absent when `k == 1`.
    pub silhouette: Option<f64>,
    pub candidates: Vec<usize>,
    pub keyframes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub config: PipelineConfig,
    pub frames: usize,
    pub keyframe_count: usize,
    pub shots: Vec<ShotReport>,
}

/// Runs clustering, candidate selection and redundancy elimination on one
/// shot. `points` and `hists` hold only this shot's frames; `shot_start` is
/// the global index of its first frame.
pub fn run_shot(
    points: &Points,
    hists: &[Histogram],
    shot_start: usize,
    config: &PipelineConfig,
) -> Result<ShotReport, PipelineError> {
    if points.n() != hists.len() {
        return Err(PipelineError::Shape(format!(
            "shot at {shot_start}: {} feature rows but {} histograms",
            points.n(),
            hists.len()
        )));
    }
    let clustering = adaptive_cluster(points)?;
    let candidates = select_candidates(&clustering, points, shot_start);
    let with_hists: Vec<(usize, &Histogram)> = candidates
        .iter()
        .map(|&g| (g, &hists[g - shot_start]))
        .collect();
    let keyframes = eliminate_with(
        &with_hists,
        config.redundancy_threshold,
        config.min_nonzero_bins,
    );
    Ok(ShotReport {
        start: shot_start,
        end: shot_start + points.n() - 1,
        k: clustering.k(),
        silhouette: clustering.silhouette,
        candidates,
        keyframes,
    })
}

/// Extracts the keyframes of a whole video. Shots run in parallel on the
/// current rayon pool; results are concatenated in shot order.
pub fn run_video(
    features: &FeatureMatrix,
    shots: &ShotList,
    hists: &[Histogram],
    config: &PipelineConfig,
) -> Result<(KeyframeSet, RunReport), PipelineError> {
    config.validate()?;
    let frames = features.n();
    if hists.len() != frames {
        return Err(PipelineError::Shape(format!(
            "{frames} feature rows but {} frame histograms",
            hists.len()
        )));
    }
    if shots.frame_count() != frames {
        return Err(PipelineError::Shape(format!(
            "shots cover {} frames but features have {frames} rows",
            shots.frame_count()
        )));
    }
    let points = Points::from_features(features, config.l2_normalize_features);
    let reports: Vec<ShotReport> = shots
        .shots()
        .par_iter()
        .map(|&Shot { start, end }| {
            let shot_points = points.slice(start, end + 1)?;
            run_shot(&shot_points, &hists[start..=end], start, config)
        })
        .collect::<Result<_, _>>()?;
    let keyframes = KeyframeSet::from_shots(reports.iter().map(|r| r.keyframes.clone()).collect())?;
    let report = RunReport {
        config: config.clone(),
        frames,
        keyframe_count: keyframes.len(),
        shots: reports,
    };
    Ok((keyframes, report))
}
