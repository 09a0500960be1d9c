use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::InterchangeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyframeError {
    #[error("malformed keyframe document: {0}")]
    Parse(String),
    #[error("negative frame index {value} at position {position}")]
    Negative { position: usize, value: i64 },
    #[error("duplicate frame index {value} at position {position}")]
    Duplicate { position: usize, value: usize },
    #[error("frame index {value} at position {position} is smaller than its predecessor {prev}")]
    Decreasing {
        position: usize,
        value: usize,
        prev: usize,
    },
    #[error("per-shot lists do not concatenate to the index list")]
    PerShotMismatch,
    #[error("frame index {value} out of range for a video of {frames} frames")]
    OutOfRange { value: usize, frames: usize },
}

/// Strictly increasing global keyframe indices, optionally grouped by shot.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KeyframeSet {
    indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_shot: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKeyframes {
    indices: Vec<i64>,
    #[serde(default)]
    per_shot: Option<Vec<Vec<i64>>>,
}

fn check_increasing(indices: &[usize]) -> Result<(), KeyframeError> {
    for (position, pair) in indices.windows(2).enumerate() {
        let (prev, value) = (pair[0], pair[1]);
        if value == prev {
            return Err(KeyframeError::Duplicate {
                position: position + 1,
                value,
            });
        }
        if value < prev {
            return Err(KeyframeError::Decreasing {
                position: position + 1,
                value,
                prev,
            });
        }
    }
    Ok(())
}

fn to_indices(raw: Vec<i64>) -> Result<Vec<usize>, KeyframeError> {
    raw.into_iter()
        .enumerate()
        .map(|(position, value)| {
            usize::try_from(value).map_err(|_| KeyframeError::Negative { position, value })
        })
        .collect()
}

impl KeyframeSet {
    pub fn new(indices: Vec<usize>) -> Result<Self, KeyframeError> {
        check_increasing(&indices)?;
        Ok(Self {
            indices,
            per_shot: None,
        })
    }

    /// Concatenates per-shot keyframe lists in shot order.
    pub fn from_shots(per_shot: Vec<Vec<usize>>) -> Result<Self, KeyframeError> {
        let indices = per_shot.concat();
        check_increasing(&indices)?;
        Ok(Self {
            indices,
            per_shot: Some(per_shot),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn per_shot(&self) -> Option<&[Vec<usize>]> {
        self.per_shot.as_deref()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Checks every index lies in `[0, frames - 1]`.
    pub fn check_range(&self, frames: usize) -> Result<(), KeyframeError> {
        match self.indices.last() {
            Some(&value) if value >= frames => Err(KeyframeError::OutOfRange { value, frames }),
            _ => Ok(()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, KeyframeError> {
        let raw: RawKeyframes =
            serde_json::from_str(text).map_err(|e| KeyframeError::Parse(e.to_string()))?;
        let indices = to_indices(raw.indices)?;
        check_increasing(&indices)?;
        let per_shot = match raw.per_shot {
            None => None,
            Some(groups) => {
                let groups = groups
                    .into_iter()
                    .map(to_indices)
                    .collect::<Result<Vec<_>, _>>()?;
                if groups.concat() != indices {
                    return Err(KeyframeError::PerShotMismatch);
                }
                Some(groups)
            }
        };
        Ok(Self { indices, per_shot })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("keyframes serialize");
        text.push('\n');
        text
    }
}

pub fn load_keyframes(path: impl AsRef<Path>) -> Result<KeyframeSet, InterchangeError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| InterchangeError::io(path, e))?;
    KeyframeSet::parse(&text).map_err(|source| InterchangeError::Keyframes {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_keyframes(set: &KeyframeSet, path: impl AsRef<Path>) -> Result<(), InterchangeError> {
    let path = path.as_ref();
    fs::write(path, set.to_json()).map_err(|e| InterchangeError::io(path, e))
}
