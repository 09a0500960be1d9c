#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use seqkey::frames::FrameManifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let manifest = FrameManifest::parse(text, Path::new("/base"));
    assert!(manifest.len() <= text.lines().count());
});
