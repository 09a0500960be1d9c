//! Binary feature-matrix file (`LMKF`).
//!
//! Layout, all integers little-endian:
//!
//! | offset | size    | field                          |
//! |--------|---------|--------------------------------|
//! | 0      | 4       | magic `LMKF`                   |
//! | 4      | 1       | version, currently `1`         |
//! | 5      | 4       | `n`, frame count (u32)         |
//! | 9      | 4       | `d`, feature dimension (u32)   |
//! | 13     | `4·n·d` | IEEE-754 binary32, row-major   |

use std::fs;
use std::path::Path;

use super::InterchangeError;

pub const MAGIC: [u8; 4] = *b"LMKF";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 13;

/// Errors produced while decoding a feature file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FeatureFormatError {
    #[error("bad magic {found:02x?} at offset 0, expected \"LMKF\"")]
    BadMagic { found: Vec<u8> },
    #[error("unsupported version {found} at offset 4, expected {VERSION}")]
    UnsupportedVersion { found: u8 },
    #[error("header truncated: {len} bytes, need {HEADER_LEN}")]
    TruncatedHeader { len: usize },
    #[error("empty dimension in header: n={n}, d={d}")]
    EmptyDimension { n: u32, d: u32 },
    #[error("payload size n={n} x d={d} overflows the address space")]
    Oversized { n: u32, d: u32 },
    #[error("payload truncated at offset {offset}: need {expected} payload bytes, found {found}")]
    TruncatedPayload {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("{extra} trailing bytes after payload at offset {offset}")]
    TrailingData { offset: usize, extra: usize },
    #[error("non-finite value {value} at offset {offset} (row {row}, column {col})")]
    NonFinite {
        offset: usize,
        row: usize,
        col: usize,
        value: f32,
    },
}

impl FeatureFormatError {
    /// Stable short name of the error category.
    pub fn category(&self) -> &'static str {
        match self {
            Self::BadMagic { .. } => "bad-magic",
            Self::UnsupportedVersion { .. } => "version",
            Self::TruncatedHeader { .. } => "truncated-header",
            Self::EmptyDimension { .. } => "empty-dimension",
            Self::Oversized { .. } => "oversized",
            Self::TruncatedPayload { .. } => "truncated-payload",
            Self::TrailingData { .. } => "trailing-data",
            Self::NonFinite { .. } => "non-finite",
        }
    }
}

/// Per-frame feature vectors of one video, `n` rows of `d` values.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n: usize,
    d: usize,
    data: Vec<f32>,
}

impl FeatureMatrix {
    pub fn new(n: usize, d: usize, data: Vec<f32>) -> Result<Self, InterchangeError> {
        if n == 0 || d == 0 {
            return Err(InterchangeError::Shape(format!(
                "feature matrix needs n >= 1 and d >= 1, got n={n}, d={d}"
            )));
        }
        if u32::try_from(n).is_err() || u32::try_from(d).is_err() {
            return Err(InterchangeError::Shape(format!(
                "feature matrix dimensions exceed u32: n={n}, d={d}"
            )));
        }
        if n.checked_mul(d) != Some(data.len()) {
            return Err(InterchangeError::Shape(format!(
                "feature matrix n={n}, d={d} needs {} values, got {}",
                n.saturating_mul(d),
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(InterchangeError::Shape(format!(
                "non-finite value {} at row {}, column {}",
                data[pos],
                pos / d,
                pos % d
            )));
        }
        Ok(Self { n, d, data })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: &[Vec<f32>]) -> Result<Self, InterchangeError> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(InterchangeError::Shape("ragged feature rows".into()));
        }
        Self::new(rows.len(), d, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f32]> {
        self.data.chunks_exact(self.d)
    }

    /// Encodes the matrix in the `LMKF` layout.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.data.len() * 4);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        // Both fit in u32, checked by the constructor.
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        out.extend_from_slice(&(self.d as u32).to_le_bytes());
        for v in &self.data {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4-byte slice"))
}

/// Decodes an `LMKF` buffer, rejecting every malformed or non-finite input.
pub fn decode_features(bytes: &[u8]) -> Result<FeatureMatrix, FeatureFormatError> {
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        // Check magic on whatever prefix exists so a short garbage file is
        // still reported as bad magic rather than truncation.
        let prefix = &bytes[..bytes.len().min(4)];
        if prefix != &MAGIC[..prefix.len()] {
            return Err(FeatureFormatError::BadMagic {
                found: prefix.to_vec(),
            });
        }
        return Err(FeatureFormatError::TruncatedHeader { len: bytes.len() });
    }
    if bytes.len() < 5 {
        return Err(FeatureFormatError::TruncatedHeader { len: bytes.len() });
    }
    if bytes[4] != VERSION {
        return Err(FeatureFormatError::UnsupportedVersion { found: bytes[4] });
    }
    if bytes.len() < HEADER_LEN {
        return Err(FeatureFormatError::TruncatedHeader { len: bytes.len() });
    }
    let n32 = read_u32(bytes, 5);
    let d32 = read_u32(bytes, 9);
    if n32 == 0 || d32 == 0 {
        return Err(FeatureFormatError::EmptyDimension { n: n32, d: d32 });
    }
    let (n, d) = (n32 as usize, d32 as usize);
    let expected = n
        .checked_mul(d)
        .and_then(|c| c.checked_mul(4))
        .ok_or(FeatureFormatError::Oversized { n: n32, d: d32 })?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() < expected {
        return Err(FeatureFormatError::TruncatedPayload {
            offset: bytes.len(),
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(FeatureFormatError::TrailingData {
            offset: HEADER_LEN + expected,
            extra: payload.len() - expected,
        });
    }
    let mut data = Vec::with_capacity(n * d);
    for (i, chunk) in payload.chunks_exact(4).enumerate() {
        let value = f32::from_le_bytes(chunk.try_into().expect("4-byte chunk"));
        if !value.is_finite() {
            return Err(FeatureFormatError::NonFinite {
                offset: HEADER_LEN + 4 * i,
                row: i / d,
                col: i % d,
                value,
            });
        }
        data.push(value);
    }
    Ok(FeatureMatrix { n, d, data })
}

pub fn write_features(
    matrix: &FeatureMatrix,
    path: impl AsRef<Path>,
) -> Result<(), InterchangeError> {
    let path = path.as_ref();
    fs::write(path, matrix.encode()).map_err(|e| InterchangeError::io(path, e))
}

pub fn load_features(path: impl AsRef<Path>) -> Result<FeatureMatrix, InterchangeError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| InterchangeError::io(path, e))?;
    decode_features(&bytes).map_err(|source| InterchangeError::Features {
        path: path.to_path_buf(),
        source,
    })
}
