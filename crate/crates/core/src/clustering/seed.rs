use rayon::prelude::*;

use super::table::DistanceTable;
use super::{nearest, Clustering, ClusteringError, Points};

/// Runs `k_max` greedy seeding rounds and returns, per round, the chosen
/// point index and the nearest-center SSE after adding it.
///
/// Each round tries every point not yet chosen as an extra center and keeps
/// the one with the lowest resulting SSE; ties go to the lowest index.
pub fn greedy_seed_rounds(
    points: &Points,
    k_max: usize,
) -> Result<Vec<(usize, f64)>, ClusteringError> {
    let n = points.n();
    if k_max == 0 || k_max > n {
        return Err(ClusteringError::KMaxOutOfRange { k_max, n });
    }
    let table = DistanceTable::new(points);
    seed_with_table(&table, n, k_max)
}

pub(crate) fn seed_with_table(
    table: &DistanceTable,
    n: usize,
    k_max: usize,
) -> Result<Vec<(usize, f64)>, ClusteringError> {
    // Squared distance of every point to its nearest chosen center so far.
    let mut nearest_sq = vec![f64::INFINITY; n];
    let mut chosen = vec![false; n];
    let mut rounds = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let scores: Vec<Option<f64>> = (0..n)
            .into_par_iter()
            .map(|c| {
                (!chosen[c]).then(|| {
                    nearest_sq
                        .iter()
                        .zip(table.row(c))
                        .map(|(&cur, &d)| cur.min(d))
                        .sum()
                })
            })
            .collect();
        let mut best: Option<(usize, f64)> = None;
        for (c, score) in scores.into_iter().enumerate() {
            if let Some(sse) = score {
                if best.is_none_or(|(_, b)| sse < b) {
                    best = Some((c, sse));
                }
            }
        }
        let (c, sse) = best.expect("k_max <= n leaves a candidate every round");
        chosen[c] = true;
        for (p, cur) in nearest_sq.iter_mut().enumerate() {
            *cur = cur.min(table.sq(p, c));
        }
        rounds.push((c, sse));
    }
    Ok(rounds)
}

/// Nearest-center partition around the seed points. A seed that attracts no
/// points (a duplicate of an earlier seed) is dropped, so `k` can come out
/// below `seeds.len()` but no cluster is ever empty.
pub(crate) fn clustering_from_seeds(points: &Points, seeds: &[usize]) -> Clustering {
    let centers: Vec<Vec<f64>> = seeds.iter().map(|&s| points.row(s).to_vec()).collect();
    let raw: Vec<usize> = points.rows().map(|p| nearest(p, &centers).0).collect();
    let mut used = vec![false; centers.len()];
    raw.iter().for_each(|&c| used[c] = true);
    let mut remap = vec![usize::MAX; centers.len()];
    let mut kept = Vec::with_capacity(centers.len());
    for (j, center) in centers.into_iter().enumerate() {
        if used[j] {
            remap[j] = kept.len();
            kept.push(center);
        }
    }
    Clustering {
        centers: kept,
        assignment: raw.into_iter().map(|c| remap[c]).collect(),
        silhouette: None,
    }
}

/// Greedy SSE-minimizing seeding of `k_max` centers, followed by
/// nearest-center assignment. Centers are the chosen data points.
pub fn greedy_seed(points: &Points, k_max: usize) -> Result<Clustering, ClusteringError> {
    let rounds = greedy_seed_rounds(points, k_max)?;
    let seeds: Vec<usize> = rounds.iter().map(|&(c, _)| c).collect();
    Ok(clustering_from_seeds(points, &seeds))
}
