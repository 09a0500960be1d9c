use rayon::prelude::*;

use super::{sq_dist, Points};

/// Symmetric table of pairwise squared distances between points.
pub(crate) struct DistanceTable {
    n: usize,
    sq: Vec<f64>,
}

impl DistanceTable {
    pub(crate) fn new(points: &Points) -> Self {
        let n = points.n();
        let mut sq = vec![0.0; n * n];
        sq.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let a = points.row(i);
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = sq_dist(a, points.row(j));
            }
        });
        Self { n, sq }
    }

    pub(crate) fn sq(&self, i: usize, j: usize) -> f64 {
        self.sq[i * self.n + j]
    }

    pub(crate) fn row(&self, i: usize) -> &[f64] {
        &self.sq[i * self.n..(i + 1) * self.n]
    }
}
