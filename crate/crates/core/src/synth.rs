//! Deterministic synthetic videos for end-to-end testing.
//!
//! Shot `i` is painted in a single hue (HSV sector `3i mod 8`, at the sector
//! center) over a fixed block pattern spanning 30 saturation/value bins, so
//! every frame is informative. Each frame adds independent uniform noise of
//! at most `±2` per channel, drawn from a seeded ChaCha8 stream. All palette
//! colors sit at bin centers except one, which straddles a value-bin edge so
//! the noise moves its pixels between two bins and frames within a shot
//! differ slightly. The first frame of every shot is the ground-truth
//! keyframe.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::{fallback_features, write_manifest, FrameImage};
use crate::interchange::{
    write_features, write_keyframes, write_shots, KeyframeSet, Shot, ShotList,
};
use crate::Error;

pub const DEFAULT_WIDTH: usize = 32;
pub const DEFAULT_HEIGHT: usize = 24;
const BLOCK: usize = 4;
const NOISE: i32 = 2;
/// Palette entry placed on the edge between value bins 4 and 5.
const EDGE_CELL: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthSpec {
    pub shots: usize,
    pub frames_per_shot: usize,
    pub seed: u64,
    pub width: usize,
    pub height: usize,
}

impl SynthSpec {
    pub fn new(shots: usize, frames_per_shot: usize, seed: u64) -> Self {
        Self {
            shots,
            frames_per_shot,
            seed,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthVideo {
    pub frames: Vec<FrameImage>,
    pub shots: ShotList,
    pub benchmark: KeyframeSet,
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [f64; 3] {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [(r + m) * 255.0, (g + m) * 255.0, (b + m) * 255.0]
}

/// Clean (noise-free) block colors for a shot.
fn palette(shot: usize) -> Vec<[f64; 3]> {
    let hue = ((3 * shot) % 8) as f64 * 45.0 + 22.5;
    let mut colors = Vec::with_capacity(30);
    for s_bin in 2..8 {
        for v_bin in 3..8 {
            let s = (s_bin as f64 + 0.5) / 8.0;
            let v = if colors.len() == EDGE_CELL {
                159.5 / 255.0
            } else {
                (v_bin as f64 + 0.5) / 8.0
            };
            colors.push(hsv_to_rgb(hue, s, v));
        }
    }
    colors
}

pub fn generate(spec: &SynthSpec) -> Result<SynthVideo, Error> {
    if spec.shots == 0 || spec.frames_per_shot == 0 || spec.width == 0 || spec.height == 0 {
        return Err(Error::InvalidArgument(format!(
            "synthetic video needs shots, frames per shot, width and height >= 1: {spec:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let blocks_per_row = spec.width.div_ceil(BLOCK);
    let mut frames = Vec::with_capacity(spec.shots * spec.frames_per_shot);
    let mut shots = Vec::with_capacity(spec.shots);
    for shot in 0..spec.shots {
        let colors = palette(shot);
        let start = shot * spec.frames_per_shot;
        shots.push(Shot {
            start,
            end: start + spec.frames_per_shot - 1,
        });
        for _ in 0..spec.frames_per_shot {
            let mut px = Vec::with_capacity(spec.width * spec.height * 3);
            for y in 0..spec.height {
                for x in 0..spec.width {
                    let block = (y / BLOCK) * blocks_per_row + x / BLOCK;
                    for channel in colors[block % colors.len()] {
                        let noisy = channel.round() as i32 + rng.random_range(-NOISE..=NOISE);
                        px.push(noisy.clamp(0, 255) as u8);
                    }
                }
            }
            frames.push(FrameImage::new(spec.width, spec.height, px)?);
        }
    }
    let benchmark = KeyframeSet::new(shots.iter().map(|s| s.start).collect())?;
    Ok(SynthVideo {
        frames,
        shots: ShotList::new(shots)?,
        benchmark,
    })
}

/// Writes a generated video into `dir`:
/// `frames/frame_NNNNNN.ppm`, `manifest.txt`, `shots.json`,
/// `features.lmkf` (histogram fallback features) and `benchmark.json`.
pub fn write_video(video: &SynthVideo, dir: &Path) -> Result<(), Error> {
    let frame_dir = dir.join("frames");
    fs::create_dir_all(&frame_dir).map_err(|e| Error::io(&frame_dir, e))?;
    let mut entries = Vec::with_capacity(video.frames.len());
    for (i, frame) in video.frames.iter().enumerate() {
        let name = format!("frame_{i:06}.ppm");
        crate::frames::write_frame(frame, frame_dir.join(&name))?;
        entries.push(format!("frames/{name}"));
    }
    write_manifest(&entries, dir.join("manifest.txt"))?;
    write_shots(&video.shots, dir.join("shots.json"))?;
    write_features(
        &fallback_features(&video.frames)?,
        dir.join("features.lmkf"),
    )?;
    write_keyframes(&video.benchmark, dir.join("benchmark.json"))?;
    Ok(())
}
