//! Reference extractors used to sanity-check evaluation numbers.

use crate::clustering::{nearest, sq_dist, Points};
use crate::interchange::KeyframeSet;

/// `k` frames spread evenly over `frames`, each at the middle of its stretch.
pub fn uniform_sampling(frames: usize, k: usize) -> KeyframeSet {
    let k = k.min(frames);
    let mut indices: Vec<usize> = (0..k).map(|i| (2 * i + 1) * frames / (2 * k)).collect();
    indices.dedup();
    KeyframeSet::new(indices).expect("evenly spaced indices increase")
}

/// Plain Lloyd k-means over all frames, initialized from `k` evenly spaced
/// frames; returns the frame nearest each final center.
pub fn kmeans_keyframes(points: &Points, k: usize, max_iter: usize) -> KeyframeSet {
    let n = points.n();
    let k = k.clamp(1, n);
    let init = uniform_sampling(n, k);
    let mut centers: Vec<Vec<f64>> = init
        .indices()
        .iter()
        .map(|&i| points.row(i).to_vec())
        .collect();
    let mut assignment = vec![usize::MAX; n];
    for _ in 0..max_iter {
        let next: Vec<usize> = points.rows().map(|p| nearest(p, &centers).0).collect();
        if next == assignment {
            break;
        }
        assignment = next;
        for (j, center) in centers.iter_mut().enumerate() {
            let members = assignment
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == j)
                .map(|(i, _)| i);
            let members: Vec<usize> = members.collect();
            // Empty clusters keep their previous center.
            if !members.is_empty() {
                *center = points.mean_of(members);
            }
        }
    }
    let mut picks: Vec<usize> = centers
        .iter()
        .filter_map(|c| {
            (0..n).min_by(|&a, &b| sq_dist(points.row(a), c).total_cmp(&sq_dist(points.row(b), c)))
        })
        .collect();
    picks.sort_unstable();
    picks.dedup();
    KeyframeSet::new(picks).expect("sorted, deduplicated")
}
