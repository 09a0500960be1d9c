//! Adaptive per-shot clustering.
//!
//! Centers are seeded greedily (each round adds the data point that most
//! lowers the nearest-center SSE) up to `k_max = floor(sqrt(n))`, then the two
//! closest clusters are merged repeatedly. Every partition with `k >= 2` is
//! scored by the silhouette coefficient and the best one is kept.

mod adaptive;
mod merge;
mod seed;
mod silhouette;
mod sse;
mod table;

pub use adaptive::{
    adaptive_cluster, adaptive_cluster_traced, k_max_for, select_candidates, MergeTrace,
};
pub use merge::merge_closest;
pub use seed::{greedy_seed, greedy_seed_rounds};
pub use silhouette::silhouette;
pub use sse::compute_sse;

use crate::interchange::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusteringError {
    #[error("no points to cluster")]
    NoPoints,
    #[error("center list is empty")]
    NoCenters,
    #[error("k_max = {k_max} out of range [1, {n}]")]
    KMaxOutOfRange { k_max: usize, n: usize },
    #[error("operation needs at least 2 clusters, got {k}")]
    TooFewClusters { k: usize },
    #[error("dimension mismatch: points have d = {points}, centers have d = {centers}")]
    DimensionMismatch { points: usize, centers: usize },
    #[error("assignment covers {assigned} points, expected {n}")]
    AssignmentLength { assigned: usize, n: usize },
}

/// Dense row-major `n x d` point set in f64.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl Points {
    pub fn new(n: usize, d: usize, data: Vec<f64>) -> Result<Self, ClusteringError> {
        if n == 0 || d == 0 || n.checked_mul(d) != Some(data.len()) {
            return Err(ClusteringError::NoPoints);
        }
        Ok(Self { n, d, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, ClusteringError> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(ClusteringError::DimensionMismatch {
                points: d,
                centers: bad.len(),
            });
        }
        Self::new(rows.len(), d, rows.concat())
    }

    /// Widens a feature matrix to f64, optionally scaling every non-zero row
    /// to unit L2 norm.
    pub fn from_features(matrix: &FeatureMatrix, l2_normalize: bool) -> Self {
        let mut data: Vec<f64> = matrix.data().iter().map(|&v| f64::from(v)).collect();
        if l2_normalize {
            for row in data.chunks_exact_mut(matrix.d()) {
                let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > 0.0 {
                    row.iter_mut().for_each(|v| *v /= norm);
                }
            }
        }
        Self {
            n: matrix.n(),
            d: matrix.d(),
            data,
        }
    }

    /// Rows `start..end` as a new point set.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self, ClusteringError> {
        if start >= end || end > self.n {
            return Err(ClusteringError::NoPoints);
        }
        Ok(Self {
            n: end - start,
            d: self.d,
            data: self.data[start * self.d..end * self.d].to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    /// Arithmetic mean of the given rows.
    pub fn mean_of(&self, members: impl IntoIterator<Item = usize>) -> Vec<f64> {
        let mut sum = vec![0.0; self.d];
        let mut count = 0usize;
        for i in members {
            for (s, v) in sum.iter_mut().zip(self.row(i)) {
                *s += v;
            }
            count += 1;
        }
        if count > 0 {
            sum.iter_mut().for_each(|s| *s /= count as f64);
        }
        sum
    }
}

/// A hard partition of a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub centers: Vec<Vec<f64>>,
    /// Cluster id of every point, in `[0, k)`.
    pub assignment: Vec<usize>,
    /// Silhouette coefficient; `None` when not computed or when `k == 1`.
    pub silhouette: Option<f64>,
}

impl Clustering {
    pub fn k(&self) -> usize {
        self.centers.len()
    }

    /// Point indices of each cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k()];
        for (i, &c) in self.assignment.iter().enumerate() {
            groups[c].push(i);
        }
        groups
    }

    /// Points as one cluster centered at their mean.
    pub fn single(points: &Points) -> Self {
        Self {
            centers: vec![points.mean_of(0..points.n())],
            assignment: vec![0; points.n()],
            silhouette: None,
        }
    }

    pub(crate) fn check_against(&self, points: &Points) -> Result<(), ClusteringError> {
        if self.assignment.len() != points.n() {
            return Err(ClusteringError::AssignmentLength {
                assigned: self.assignment.len(),
                n: points.n(),
            });
        }
        if let Some(c) = self.centers.iter().find(|c| c.len() != points.d()) {
            return Err(ClusteringError::DimensionMismatch {
                points: points.d(),
                centers: c.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

/// Index of the nearest center, ties to the lowest id.
pub(crate) fn nearest(point: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.iter().enumerate() {
        let d = sq_dist(point, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}
