#![no_main]

use libfuzzer_sys::fuzz_target;
use seqkey::KeyframeSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = KeyframeSet::parse(text) {
        assert!(set.indices().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(KeyframeSet::parse(&set.to_json()).expect("re-parse"), set);
    }
});
