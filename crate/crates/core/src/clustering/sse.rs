use super::{nearest, ClusteringError, Points};

/// Sum over points of the squared distance to the nearest center.
pub fn compute_sse(points: &Points, centers: &[Vec<f64>]) -> Result<f64, ClusteringError> {
    if centers.is_empty() {
        return Err(ClusteringError::NoCenters);
    }
    if let Some(c) = centers.iter().find(|c| c.len() != points.d()) {
        return Err(ClusteringError::DimensionMismatch {
            points: points.d(),
            centers: c.len(),
        });
    }
    Ok(points.rows().map(|p| nearest(p, centers).1).sum())
}
