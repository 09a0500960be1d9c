#![no_main]

use libfuzzer_sys::fuzz_target;
use seqkey::frames::{compute_histogram, decode_ppm};

fuzz_target!(|data: &[u8]| {
    if let Ok(frame) = decode_ppm(data) {
        assert_eq!(frame.pixels().len(), frame.width() * frame.height() * 3);
        assert_eq!(
            compute_histogram(&frame).total(),
            frame.pixel_count() as u64
        );
    }
});
