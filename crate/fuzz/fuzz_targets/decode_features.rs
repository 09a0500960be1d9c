#![no_main]

use libfuzzer_sys::fuzz_target;
use seqkey::interchange::decode_features;

fuzz_target!(|data: &[u8]| {
    // Anything accepted must be a faithful encoding of the decoded matrix.
    if let Ok(m) = decode_features(data) {
        assert_eq!(m.encode(), data);
    }
});
