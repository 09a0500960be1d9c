//! Binary PPM (`P6`, maxval 255) reader and writer.

use std::fs;
use std::path::Path;

use super::FramesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PpmError {
    #[error("unsupported image format {magic:?}, only binary PPM (P6) is accepted")]
    UnsupportedFormat { magic: String },
    #[error("malformed PPM header at offset {offset}: {reason}")]
    BadHeader { offset: usize, reason: &'static str },
    #[error("unsupported maxval {0}, expected 255")]
    UnsupportedMaxval(u64),
    #[error("image has zero width or height ({width}x{height})")]
    ZeroDimension { width: u64, height: u64 },
    #[error("image dimensions {width}x{height} are too large")]
    Oversized { width: u64, height: u64 },
    #[error("pixel data truncated at offset {offset}: need {expected} bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("{extra} trailing bytes after pixel data at offset {offset}")]
    TrailingData { offset: usize, extra: usize },
}

/// An 8-bit RGB frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl FrameImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, FramesError> {
        if width == 0 || height == 0 {
            return Err(FramesError::Shape(format!(
                "frame needs width, height >= 1, got {width}x{height}"
            )));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|p| p.checked_mul(3))
            .ok_or_else(|| FramesError::Shape(format!("frame {width}x{height} too large")))?;
        if pixels.len() != expected {
            return Err(FramesError::Shape(format!(
                "frame {width}x{height} needs {expected} bytes, got {}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// A frame filled with one color.
    pub fn solid(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self, FramesError> {
        Self::new(width, height, rgb.repeat(width * height))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn rgb(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.pixels.chunks_exact(3).map(|p| [p[0], p[1], p[2]])
    }

    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u64, PpmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(PpmError::BadHeader {
                    offset: start,
                    reason: "numeric field overflows",
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PpmError::BadHeader {
                offset: start,
                reason: what,
            });
        }
        Ok(value)
    }
}

/// Decodes a P6 image.
pub fn decode_ppm(bytes: &[u8]) -> Result<FrameImage, PpmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        let magic = String::from_utf8_lossy(&bytes[..bytes.len().min(2)]).into_owned();
        return Err(PpmError::UnsupportedFormat { magic });
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(PpmError::BadHeader {
            offset: 2,
            reason: "expected whitespace after magic",
        });
    }
    let width = cur.number("expected width")?;
    let height = cur.number("expected height")?;
    let maxval = cur.number("expected maxval")?;
    if maxval != 255 {
        return Err(PpmError::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(PpmError::ZeroDimension { width, height });
    }
    match cur.bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => {
            return Err(PpmError::BadHeader {
                offset: cur.pos,
                reason: "expected single whitespace before pixel data",
            })
        }
    }
    let expected = usize::try_from(width)
        .ok()
        .zip(usize::try_from(height).ok())
        .and_then(|(w, h)| w.checked_mul(h))
        .and_then(|p| p.checked_mul(3))
        .ok_or(PpmError::Oversized { width, height })?;
    let data = &bytes[cur.pos..];
    if data.len() < expected {
        return Err(PpmError::Truncated {
            offset: bytes.len(),
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(PpmError::TrailingData {
            offset: cur.pos + expected,
            extra: data.len() - expected,
        });
    }
    Ok(FrameImage {
        width: width as usize,
        height: height as usize,
        pixels: data.to_vec(),
    })
}

pub fn load_frame(path: impl AsRef<Path>) -> Result<FrameImage, FramesError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| FramesError::io(path, e))?;
    decode_ppm(&bytes).map_err(|source| FramesError::Ppm {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_frame(frame: &FrameImage, path: impl AsRef<Path>) -> Result<(), FramesError> {
    let path = path.as_ref();
    fs::write(path, frame.encode_ppm()).map_err(|e| FramesError::io(path, e))
}
