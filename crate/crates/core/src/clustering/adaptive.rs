use super::merge::merge_closest;
use super::seed::{clustering_from_seeds, seed_with_table};
use super::silhouette::silhouette_with_table;
use super::table::DistanceTable;
use super::{sq_dist, Clustering, ClusteringError, Points};

/// Scored partitions visited while merging, from `k_max` down to 2.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MergeTrace {
    pub snapshots: Vec<Clustering>,
}

impl MergeTrace {
    /// Snapshot with the highest silhouette; ties keep the larger `k`.
    pub fn best(&self) -> Option<&Clustering> {
        let mut best: Option<&Clustering> = None;
        // Snapshots are in decreasing k, so a strict comparison keeps the
        // larger k on ties.
        for snap in &self.snapshots {
            let sc = snap.silhouette.unwrap_or(f64::NEG_INFINITY);
            if best.is_none_or(|b| sc > b.silhouette.unwrap_or(f64::NEG_INFINITY)) {
                best = Some(snap);
            }
        }
        best
    }
}

/// `floor(sqrt(n))`, at least 1.
pub fn k_max_for(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k.max(1)
}

/// Adaptive clustering of one shot. See [`adaptive_cluster_traced`].
pub fn adaptive_cluster(points: &Points) -> Result<Clustering, ClusteringError> {
    adaptive_cluster_traced(points).map(|(c, _)| c)
}

/// Seeds `k_max = floor(sqrt(n))` centers greedily, merges the closest pair
/// until two clusters remain, scoring every partition (including the seeded
/// one) by silhouette, and returns the best together with the trace.
///
/// With `k_max == 1` the single-cluster partition is returned and the trace
/// is empty.
pub fn adaptive_cluster_traced(
    points: &Points,
) -> Result<(Clustering, MergeTrace), ClusteringError> {
    let n = points.n();
    if n == 0 {
        return Err(ClusteringError::NoPoints);
    }
    let k_max = k_max_for(n);
    if k_max == 1 {
        return Ok((Clustering::single(points), MergeTrace::default()));
    }
    let table = DistanceTable::new(points);
    let seeds: Vec<usize> = seed_with_table(&table, n, k_max)?
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    let mut current = clustering_from_seeds(points, &seeds);
    if current.k() == 1 {
        // Every frame coincides with the first seed.
        return Ok((Clustering::single(points), MergeTrace::default()));
    }
    let mut trace = MergeTrace::default();
    loop {
        current.silhouette = Some(silhouette_with_table(&table, points, &current));
        let k = current.k();
        trace.snapshots.push(current.clone());
        if k <= 2 {
            break;
        }
        current = merge_closest(&current, points)?;
    }
    let best = trace
        .best()
        .cloned()
        .expect("trace holds k_max - 1 >= 1 snapshots");
    Ok((best, trace))
}

/// For each cluster, the member nearest its center (ties to the lowest
/// index), shifted by `shot_start` and sorted.
pub fn select_candidates(
    clustering: &Clustering,
    points: &Points,
    shot_start: usize,
) -> Vec<usize> {
    let mut out: Vec<usize> = clustering
        .members()
        .iter()
        .zip(&clustering.centers)
        .filter_map(|(group, center)| {
            let mut best: Option<(usize, f64)> = None;
            for &i in group {
                let d = sq_dist(points.row(i), center);
                if best.is_none_or(|(_, b)| d < b) {
                    best = Some((i, d));
                }
            }
            best.map(|(i, _)| i + shot_start)
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_max_floor() {
        let cases = [
            (1, 1),
            (3, 1),
            (4, 2),
            (8, 2),
            (9, 3),
            (40, 6),
            (120, 10),
            (121, 11),
        ];
        for (n, k) in cases {
            assert_eq!(k_max_for(n), k, "n = {n}");
        }
    }

    #[test]
    fn single_frame() {
        let p = Points::from_rows(&[vec![0.2, 0.4]]).unwrap();
        let c = adaptive_cluster(&p).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(c.silhouette, None);
        assert_eq!(select_candidates(&c, &p, 7), vec![7]);
    }

    #[test]
    fn best_is_max_of_trace() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![((i * 7919) % 31) as f64 / 3.0, ((i * 104_729) % 17) as f64])
            .collect();
        let p = Points::from_rows(&rows).unwrap();
        let (c, trace) = adaptive_cluster_traced(&p).unwrap();
        assert_eq!(trace.snapshots.len(), k_max_for(30) - 1);
        let ks: Vec<usize> = trace.snapshots.iter().map(Clustering::k).collect();
        assert!(ks.windows(2).all(|w| w[0] == w[1] + 1));
        let max = trace
            .snapshots
            .iter()
            .map(|s| s.silhouette.unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(c.silhouette, Some(max));
    }

    #[test]
    fn trace_tie_prefers_larger_k() {
        let snap = |k: usize, sc: f64| Clustering {
            centers: vec![vec![0.0]; k],
            assignment: (0..k).collect(),
            silhouette: Some(sc),
        };
        let trace = MergeTrace {
            snapshots: vec![snap(4, 0.5), snap(3, 0.7), snap(2, 0.7)],
        };
        assert_eq!(trace.best().unwrap().k(), 3);
    }

    #[test]
    fn identical_frames_give_one_cluster() {
        let p = Points::from_rows(&vec![vec![0.3, 0.1]; 40]).unwrap();
        let c = adaptive_cluster(&p).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(select_candidates(&c, &p, 0), vec![0]);
    }

    #[test]
    fn candidate_tie_goes_to_lower_index() {
        let p = Points::from_rows(&[vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let c = Clustering {
            centers: vec![vec![1.0, 0.0]],
            assignment: vec![0, 0],
            silhouette: None,
        };
        assert_eq!(select_candidates(&c, &p, 100), vec![100]);
    }

    #[test]
    fn singleton_clusters_are_their_own_candidates() {
        let p = Points::from_rows(&[vec![5.0], vec![0.0], vec![9.0]]).unwrap();
        let c = Clustering {
            centers: vec![vec![5.0], vec![0.0], vec![9.0]],
            assignment: vec![0, 1, 2],
            silhouette: None,
        };
        assert_eq!(select_candidates(&c, &p, 10), vec![10, 11, 12]);
    }
}
