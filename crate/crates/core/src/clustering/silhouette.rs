use super::table::DistanceTable;
use super::{dist, Clustering, ClusteringError, Points};

/// Silhouette coefficient of a partition: the mean over points of
/// `(b - a) / max(a, b)`.
///
/// `a` is the mean Euclidean distance from a point to the other members of
/// its cluster. `b` is the smallest Euclidean distance from the point to any
/// *other cluster's center* (not the mean distance to that cluster's
/// points, as in the textbook silhouette). Points in singleton clusters, and
/// points with `a = b = 0`, score 0.
pub fn silhouette(points: &Points, clustering: &Clustering) -> Result<f64, ClusteringError> {
    check(points, clustering)?;
    let table = DistanceTable::new(points);
    Ok(silhouette_with_table(&table, points, clustering))
}

fn check(points: &Points, clustering: &Clustering) -> Result<(), ClusteringError> {
    clustering.check_against(points)?;
    if clustering.k() < 2 {
        return Err(ClusteringError::TooFewClusters { k: clustering.k() });
    }
    Ok(())
}

pub(crate) fn silhouette_with_table(
    table: &DistanceTable,
    points: &Points,
    clustering: &Clustering,
) -> f64 {
    let members = clustering.members();
    let total: f64 = (0..points.n())
        .map(|i| {
            let own = clustering.assignment[i];
            let group = &members[own];
            if group.len() < 2 {
                return 0.0;
            }
            let a = group
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| table.sq(i, j).sqrt())
                .sum::<f64>()
                / (group.len() - 1) as f64;
            let b = clustering
                .centers
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != own)
                .map(|(_, center)| dist(points.row(i), center))
                .fold(f64::INFINITY, f64::min);
            let denom = a.max(b);
            if denom > 0.0 {
                (b - a) / denom
            } else {
                0.0
            }
        })
        .sum();
    total / points.n() as f64
}
