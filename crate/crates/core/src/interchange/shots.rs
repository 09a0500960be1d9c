use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::InterchangeError;

/// Inclusive frame interval `[start, end]`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shot {
    pub start: usize,
    pub end: usize,
}

impl Shot {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, frame: usize) -> bool {
        (self.start..=self.end).contains(&frame)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShotListError {
    #[error("malformed shot document: {0}")]
    Parse(String),
    #[error("shot list is empty")]
    Empty,
    #[error("shot {index}: negative frame index {value}")]
    Negative { index: usize, value: i64 },
    #[error("shot {index}: start {start} > end {end}")]
    Inverted {
        index: usize,
        start: usize,
        end: usize,
    },
    #[error("first shot starts at {start}, expected 0")]
    NotAtOrigin { start: usize },
    #[error("gap before shot {index}: expected start {expected}, found {found}")]
    Gap {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("shot {index} overlaps its predecessor: start {found} <= previous end {prev_end}")]
    Overlap {
        index: usize,
        found: usize,
        prev_end: usize,
    },
    #[error("shot {index} is out of order: start {found} < previous start {prev_start}")]
    Unsorted {
        index: usize,
        found: usize,
        prev_start: usize,
    },
    #[error("shots cover {covered} frames but the video has {frames}")]
    Coverage { covered: usize, frames: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShot {
    start: i64,
    end: i64,
}

/// Ordered shots tiling `[0, l-1]` with no gaps or overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotList {
    shots: Vec<Shot>,
}

impl ShotList {
    pub fn new(shots: Vec<Shot>) -> Result<Self, ShotListError> {
        let first = shots.first().ok_or(ShotListError::Empty)?;
        if first.start != 0 {
            return Err(ShotListError::NotAtOrigin { start: first.start });
        }
        for (index, shot) in shots.iter().enumerate() {
            if shot.start > shot.end {
                return Err(ShotListError::Inverted {
                    index,
                    start: shot.start,
                    end: shot.end,
                });
            }
            if index == 0 {
                continue;
            }
            let prev = shots[index - 1];
            if shot.start < prev.start {
                return Err(ShotListError::Unsorted {
                    index,
                    found: shot.start,
                    prev_start: prev.start,
                });
            }
            if shot.start <= prev.end {
                return Err(ShotListError::Overlap {
                    index,
                    found: shot.start,
                    prev_end: prev.end,
                });
            }
            if shot.start != prev.end + 1 {
                return Err(ShotListError::Gap {
                    index,
                    expected: prev.end + 1,
                    found: shot.start,
                });
            }
        }
        Ok(Self { shots })
    }

    /// A single shot covering `frames` frames.
    pub fn whole(frames: usize) -> Result<Self, ShotListError> {
        if frames == 0 {
            return Err(ShotListError::Empty);
        }
        Self::new(vec![Shot {
            start: 0,
            end: frames - 1,
        }])
    }

    pub fn shots(&self) -> &[Shot] {
        &self.shots
    }

    pub fn len(&self) -> usize {
        self.shots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shots.is_empty()
    }

    /// Total frame count `l` covered by the shots.
    pub fn frame_count(&self) -> usize {
        self.shots.last().map_or(0, |s| s.end + 1)
    }

    /// Checks that the shots tile exactly `frames` frames.
    pub fn check_covers(&self, frames: usize) -> Result<(), ShotListError> {
        let covered = self.frame_count();
        if covered != frames {
            return Err(ShotListError::Coverage { covered, frames });
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, ShotListError> {
        let raw: Vec<RawShot> =
            serde_json::from_str(text).map_err(|e| ShotListError::Parse(e.to_string()))?;
        let mut shots = Vec::with_capacity(raw.len());
        for (index, r) in raw.into_iter().enumerate() {
            for value in [r.start, r.end] {
                if value < 0 {
                    return Err(ShotListError::Negative { index, value });
                }
            }
            let to_usize = |v: i64| {
                usize::try_from(v).map_err(|_| ShotListError::Parse(format!("index {v} too large")))
            };
            shots.push(Shot {
                start: to_usize(r.start)?,
                end: to_usize(r.end)?,
            });
        }
        Self::new(shots)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.shots).expect("shots serialize");
        text.push('\n');
        text
    }
}

pub fn load_shots(path: impl AsRef<Path>) -> Result<ShotList, InterchangeError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| InterchangeError::io(path, e))?;
    ShotList::parse(&text).map_err(|source| InterchangeError::Shots {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_shots(shots: &ShotList, path: impl AsRef<Path>) -> Result<(), InterchangeError> {
    let path = path.as_ref();
    fs::write(path, shots.to_json()).map_err(|e| InterchangeError::io(path, e))
}
