use super::{sq_dist, Clustering, ClusteringError, Points};

/// Merges the two clusters whose centers are closest (ties to the
/// lexicographically smallest id pair). The union keeps the smaller id and is
/// centered at the mean of its members; ids above the removed one shift
/// down by one. No point is reassigned otherwise.
pub fn merge_closest(
    clustering: &Clustering,
    points: &Points,
) -> Result<Clustering, ClusteringError> {
    clustering.check_against(points)?;
    let k = clustering.k();
    if k < 2 {
        return Err(ClusteringError::TooFewClusters { k });
    }
    let mut best = (0, 1, f64::INFINITY);
    for a in 0..k {
        for b in a + 1..k {
            let d = sq_dist(&clustering.centers[a], &clustering.centers[b]);
            if d < best.2 {
                best = (a, b, d);
            }
        }
    }
    let (keep, drop, _) = best;
    let assignment: Vec<usize> = clustering
        .assignment
        .iter()
        .map(|&c| match c {
            c if c == drop => keep,
            c if c > drop => c - 1,
            c => c,
        })
        .collect();
    let mut centers = clustering.centers.clone();
    centers.remove(drop);
    centers[keep] = points.mean_of(
        assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == keep)
            .map(|(i, _)| i),
    );
    Ok(Clustering {
        centers,
        assignment,
        silhouette: None,
    })
}
