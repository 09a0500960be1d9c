//! Summary quality metrics: F1 against benchmark keyframes, fidelity, and
//! compression ratio, plus unweighted dataset averaging.

use serde::{Deserialize, Serialize};

use crate::frames::Histogram;
use crate::interchange::KeyframeSet;
use crate::redundancy::histogram_similarity;

/// Two frames count as the same content at or above this similarity.
pub const MATCH_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("video has no frames")]
    NoFrames,
    #[error("keyframe count {k} exceeds frame count {frames}")]
    TooManyKeyframes { k: usize, frames: usize },
    #[error("frame index {index} out of range for {frames} frames")]
    OutOfRange { index: usize, frames: usize },
    #[error("no per-video reports to average")]
    EmptyDataset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub f1: f64,
    pub precision: f64,
    pub recall: f64,
    pub fidelity: f64,
    pub cr: f64,
    /// Matched `(extracted, benchmark)` frame pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matches: Vec<(usize, usize)>,
}

/// Greedy one-to-one matching by histogram similarity.
///
/// All pairs at or above [`MATCH_THRESHOLD`] are ranked by similarity
/// (descending), then extracted index, then benchmark index, and taken in
/// that order when neither frame is already matched.
pub fn match_keyframes(
    extracted: &KeyframeSet,
    benchmark: &KeyframeSet,
    hists: &[Histogram],
) -> Result<Vec<(usize, usize)>, MetricsError> {
    for &index in extracted.indices().iter().chain(benchmark.indices()) {
        if index >= hists.len() {
            return Err(MetricsError::OutOfRange {
                index,
                frames: hists.len(),
            });
        }
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for &e in extracted.indices() {
        for &b in benchmark.indices() {
            let s = histogram_similarity(&hists[e], &hists[b]);
            if s >= MATCH_THRESHOLD {
                pairs.push((s, e, b));
            }
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_e = std::collections::HashSet::new();
    let mut used_b = std::collections::HashSet::new();
    let mut matches = Vec::new();
    for (_, e, b) in pairs {
        if !used_e.contains(&e) && !used_b.contains(&b) {
            used_e.insert(e);
            used_b.insert(b);
            matches.push((e, b));
        }
    }
    matches.sort_unstable();
    Ok(matches)
}

/// `(precision, recall, f1)`; any zero denominator yields 0 for that term.
pub fn precision_recall_f1(matches: usize, extracted: usize, benchmark: usize) -> (f64, f64, f64) {
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let p = ratio(matches, extracted);
    let r = ratio(matches, benchmark);
    let f1 = if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    };
    (p, r, f1)
}

pub fn f1(matches: usize, extracted: usize, benchmark: usize) -> f64 {
    precision_recall_f1(matches, extracted, benchmark).2
}

/// `1 - max_x min_k (1 - sim(x, k))` over all frames `x` and keyframes `k`;
/// 0 for an empty keyframe set.
pub fn fidelity(hists: &[Histogram], extracted: &KeyframeSet) -> Result<f64, MetricsError> {
    if let Some(&index) = extracted.indices().iter().find(|&&i| i >= hists.len()) {
        return Err(MetricsError::OutOfRange {
            index,
            frames: hists.len(),
        });
    }
    if extracted.is_empty() || hists.is_empty() {
        return Ok(0.0);
    }
    let worst = hists
        .iter()
        .map(|x| {
            extracted
                .indices()
                .iter()
                .map(|&k| 1.0 - histogram_similarity(x, &hists[k]))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok((1.0 - worst).clamp(0.0, 1.0))
}

/// `1 - k / l`.
pub fn compression_ratio(frames: usize, keyframes: usize) -> Result<f64, MetricsError> {
    if frames == 0 {
        return Err(MetricsError::NoFrames);
    }
    if keyframes > frames {
        return Err(MetricsError::TooManyKeyframes {
            k: keyframes,
            frames,
        });
    }
    // (l - k) / l rounds once, so decimal results such as 0.992 come out exact.
    Ok((frames - keyframes) as f64 / frames as f64)
}

/// Scores one video's extracted keyframes against its benchmark.
pub fn evaluate_video(
    extracted: &KeyframeSet,
    benchmark: &KeyframeSet,
    hists: &[Histogram],
) -> Result<EvalReport, MetricsError> {
    let matches = match_keyframes(extracted, benchmark, hists)?;
    let (precision, recall, f1) =
        precision_recall_f1(matches.len(), extracted.len(), benchmark.len());
    Ok(EvalReport {
        f1,
        precision,
        recall,
        fidelity: fidelity(hists, extracted)?,
        cr: compression_ratio(hists.len(), extracted.len())?,
        matches,
    })
}

/// Unweighted mean of every metric over videos. Matches are not carried over.
pub fn evaluate_dataset(reports: &[EvalReport]) -> Result<EvalReport, MetricsError> {
    if reports.is_empty() {
        return Err(MetricsError::EmptyDataset);
    }
    let n = reports.len() as f64;
    let mean = |get: fn(&EvalReport) -> f64| reports.iter().map(get).sum::<f64>() / n;
    Ok(EvalReport {
        f1: mean(|r| r.f1),
        precision: mean(|r| r.precision),
        recall: mean(|r| r.recall),
        fidelity: mean(|r| r.fidelity),
        cr: mean(|r| r.cr),
        matches: Vec::new(),
    })
}
