use super::hsv::rgb_to_hsv;
use super::FrameImage;

pub const BINS_PER_CHANNEL: usize = 8;
pub const BIN_COUNT: usize = BINS_PER_CHANNEL * BINS_PER_CHANNEL * BINS_PER_CHANNEL;

/// 8x8x8 HSV color histogram, flat index `h * 64 + s * 8 + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: Box<[u32; BIN_COUNT]>,
    total: u64,
}

/// Flat histogram bin of an RGB pixel.
pub fn bin_index(rgb: [u8; 3]) -> usize {
    let (h, s, v) = rgb_to_hsv(rgb[0], rgb[1], rgb[2]);
    let top = BINS_PER_CHANNEL - 1;
    let h_bin = ((h / 45.0) as usize).min(top);
    let s_bin = ((s * 8.0) as usize).min(top);
    let v_bin = ((v * 8.0) as usize).min(top);
    h_bin * 64 + s_bin * 8 + v_bin
}

impl Histogram {
    /// Builds a histogram from raw bin counts. Returns `None` when all counts are zero.
    pub fn from_bins(bins: [u32; BIN_COUNT]) -> Option<Self> {
        let total = bins.iter().map(|&c| u64::from(c)).sum();
        (total > 0).then(|| Self {
            bins: Box::new(bins),
            total,
        })
    }

    pub fn bins(&self) -> &[u32; BIN_COUNT] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn nonzero_bins(&self) -> usize {
        self.bins.iter().filter(|&&c| c > 0).count()
    }

    /// Bin counts divided by the total, summing to 1.
    pub fn normalized(&self) -> impl Iterator<Item = f64> + '_ {
        let total = self.total as f64;
        self.bins.iter().map(move |&c| f64::from(c) / total)
    }
}

pub fn compute_histogram(frame: &FrameImage) -> Histogram {
    let mut bins = [0u32; BIN_COUNT];
    for px in frame.rgb() {
        bins[bin_index(px)] += 1;
    }
    Histogram {
        bins: Box::new(bins),
        total: frame.pixel_count() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pure_red_single_bin() {
        let f = FrameImage::solid(4, 3, [255, 0, 0]).unwrap();
        let h = compute_histogram(&f);
        assert_eq!(h.nonzero_bins(), 1);
        assert_eq!(h.bins()[63], 12);
        assert_eq!(h.total(), 12);
    }

    #[test]
    fn half_red_half_green() {
        let mut px = [255u8, 0, 0].repeat(8);
        px.extend([0u8, 255, 0].repeat(8));
        let h = compute_histogram(&FrameImage::new(4, 4, px).unwrap());
        let nz: Vec<_> = h.bins().iter().copied().filter(|&c| c > 0).collect();
        assert_eq!(nz, vec![8, 8]);
        assert_eq!(h.bins()[bin_index([0, 255, 0])], 8);
    }

    #[test]
    fn top_bins_clamp() {
        assert_eq!(bin_index([255, 255, 255]), 7);
        assert_eq!(bin_index([0, 0, 0]), 0);
        assert_eq!(bin_index([0, 0, 255]), 5 * 64 + 63);
    }

    proptest! {
        #[test]
        fn conserves_pixels_and_ignores_order(
            w in 1usize..12,
            h in 1usize..12,
            seed in proptest::collection::vec(any::<u8>(), 432),
            rot in 0usize..144,
        ) {
            let pixels = seed[..w * h * 3].to_vec();
            let frame = FrameImage::new(w, h, pixels.clone()).unwrap();
            let hist = compute_histogram(&frame);
            let sum: u64 = hist.bins().iter().map(|&c| u64::from(c)).sum();
            prop_assert_eq!(sum, (w * h) as u64);
            prop_assert_eq!(hist.total(), (w * h) as u64);

            let mut triples: Vec<[u8; 3]> = frame.rgb().collect();
            triples.rotate_left(rot % (w * h));
            triples.reverse();
            let shuffled = FrameImage::new(w, h, triples.concat()).unwrap();
            prop_assert_eq!(compute_histogram(&shuffled), hist);
        }
    }
}
