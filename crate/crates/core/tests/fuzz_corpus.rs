//! Replays the checked-in fuzz corpus through the same invariants the fuzz
//! targets assert, so the seeds stay exercised on stable.

use std::fs;
use std::path::{Path, PathBuf};

use seqkey::frames::{compute_histogram, decode_ppm, FrameManifest};
use seqkey::interchange::decode_features;
use seqkey::{KeyframeSet, ShotList};

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn name(p: &Path) -> &str {
    p.file_name().unwrap().to_str().unwrap()
}

#[test]
fn feature_seeds() {
    for (path, bytes) in seeds("decode_features") {
        match decode_features(&bytes) {
            Ok(m) => {
                assert!(name(&path).starts_with("valid"), "{}", path.display());
                assert_eq!(m.encode(), bytes);
            }
            Err(e) => assert!(!name(&path).starts_with("valid"), "{}: {e}", path.display()),
        }
    }
}

#[test]
fn shot_seeds() {
    let mut accepted = 0;
    for (_, bytes) in seeds("parse_shots") {
        if let Ok(shots) = ShotList::parse(std::str::from_utf8(&bytes).unwrap()) {
            assert_eq!(ShotList::parse(&shots.to_json()).unwrap(), shots);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn keyframe_seeds() {
    let mut accepted = 0;
    for (_, bytes) in seeds("parse_keyframes") {
        if let Ok(set) = KeyframeSet::parse(std::str::from_utf8(&bytes).unwrap()) {
            assert_eq!(KeyframeSet::parse(&set.to_json()).unwrap(), set);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}

#[test]
fn ppm_seeds() {
    let mut accepted = 0;
    for (_, bytes) in seeds("decode_ppm") {
        if let Ok(frame) = decode_ppm(&bytes) {
            assert_eq!(
                compute_histogram(&frame).total(),
                frame.pixel_count() as u64
            );
            accepted += 1;
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn manifest_seeds() {
    for (path, bytes) in seeds("parse_manifest") {
        let text = std::str::from_utf8(&bytes).unwrap();
        let m = FrameManifest::parse(text, Path::new("/base"));
        assert_eq!(m.len(), 2, "{}", path.display());
        assert!(m.paths().iter().all(|p| p.is_absolute()));
    }
}
