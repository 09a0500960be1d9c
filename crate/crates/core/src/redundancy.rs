//! Candidate pruning: uninformative-frame filter and similarity-based
//! duplicate removal.

use crate::frames::Histogram;

pub const DEFAULT_THRESHOLD: f64 = 0.8;
pub const DEFAULT_MIN_NONZERO_BINS: usize = 10;

/// True when fewer than `min_nonzero_bins` bins are populated.
pub fn is_uninformative_with(hist: &Histogram, min_nonzero_bins: usize) -> bool {
    hist.nonzero_bins() < min_nonzero_bins
}

/// Solid-color / near-blank test with the default cut-off of 10 bins.
pub fn is_uninformative(hist: &Histogram) -> bool {
    is_uninformative_with(hist, DEFAULT_MIN_NONZERO_BINS)
}

/// Intersection of two L1-normalized histograms, in `[0, 1]`.
pub fn histogram_similarity(a: &Histogram, b: &Histogram) -> f64 {
    let (ta, tb) = (a.total() as f64, b.total() as f64);
    let sum: f64 = a
        .bins()
        .iter()
        .zip(b.bins().iter())
        .map(|(&x, &y)| (f64::from(x) / ta).min(f64::from(y) / tb))
        .sum();
    sum.clamp(0.0, 1.0)
}

/// Symmetric pairwise similarity over a candidate set, unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    size: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn new(hists: &[&Histogram]) -> Self {
        let size = hists.len();
        let mut values = vec![1.0; size * size];
        for i in 0..size {
            for j in i + 1..size {
                let s = histogram_similarity(hists[i], hists[j]);
                values[i * size + j] = s;
                values[j * size + i] = s;
            }
        }
        Self { size, values }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    /// Largest strict-upper-triangle entry among `alive` rows/columns, ties
    /// to the smallest `i` then smallest `j`.
    fn argmax_upper(&self, alive: &[bool]) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in (0..self.size).filter(|&i| alive[i]) {
            for j in (i + 1..self.size).filter(|&j| alive[j]) {
                let s = self.get(i, j);
                if best.is_none_or(|(_, _, b)| s > b) {
                    best = Some((i, j, s));
                }
            }
        }
        best
    }
}

/// Removes uninformative candidates, then repeatedly deletes the later frame
/// of the most similar remaining pair until every pair is below `threshold`.
/// `candidates` must be sorted by frame index; the survivors keep that order.
pub fn eliminate_with(
    candidates: &[(usize, &Histogram)],
    threshold: f64,
    min_nonzero_bins: usize,
) -> Vec<usize> {
    let informative: Vec<(usize, &Histogram)> = candidates
        .iter()
        .copied()
        .filter(|(_, h)| !is_uninformative_with(h, min_nonzero_bins))
        .collect();
    let hists: Vec<&Histogram> = informative.iter().map(|&(_, h)| h).collect();
    let sim = SimilarityMatrix::new(&hists);
    let mut alive = vec![true; informative.len()];
    while let Some((_, j, s)) = sim.argmax_upper(&alive) {
        if s < threshold {
            break;
        }
        alive[j] = false;
    }
    informative
        .iter()
        .zip(&alive)
        .filter(|(_, &keep)| keep)
        .map(|(&(idx, _), _)| idx)
        .collect()
}

pub fn eliminate(candidates: &[(usize, &Histogram)], threshold: f64) -> Vec<usize> {
    eliminate_with(candidates, threshold, DEFAULT_MIN_NONZERO_BINS)
}
