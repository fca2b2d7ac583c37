//! 8-bit image buffers and binary netpbm (P5/P6) reading and writing.
//!
//! Netpbm is the only image container in the toolkit: P5 for grayscale,
//! P6 for RGB, 8-bit samples. The writer always emits maxval 255; the
//! reader tolerates any maxval up to 255 and leaves samples unscaled.

use super::ContentIdError;

/// Row-major 8-bit image, 1 (gray) or 3 (RGB) channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    channels: u8,
    pixels: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(
        width: u32,
        height: u32,
        channels: u8,
        pixels: Vec<u8>,
    ) -> Result<Self, ContentIdError> {
        if width == 0 || height == 0 || !(channels == 1 || channels == 3) {
            return Err(ContentIdError::InvalidImage(format!(
                "bad dimensions {width}x{height}x{channels}"
            )));
        }
        let expected = width as usize * height as usize * channels as usize;
        if pixels.len() != expected {
            return Err(ContentIdError::InvalidImage(format!(
                "pixel buffer holds {} bytes, expected {expected}",
                pixels.len()
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    /// Luma plane: `Y = (299 R + 587 G + 114 B) / 1000` in integer
    /// arithmetic; grayscale images pass through unchanged.
    pub fn luma(&self) -> Vec<u8> {
        match self.channels {
            1 => self.pixels.clone(),
            _ => self
                .pixels
                .chunks_exact(3)
                .map(|px| {
                    let y = (299 * px[0] as u32 + 587 * px[1] as u32 + 114 * px[2] as u32) / 1000;
                    y as u8
                })
                .collect(),
        }
    }

    /// Decode a binary netpbm image (P5 or P6, maxval <= 255).
    pub fn from_netpbm(data: &[u8]) -> Result<Self, ContentIdError> {
        let mut cursor = 0usize;
        let magic = next_token(data, &mut cursor)
            .ok_or_else(|| ContentIdError::Netpbm("missing magic number".into()))?;
        let channels: u8 = match magic.as_slice() {
            b"P5" => 1,
            b"P6" => 3,
            other => {
                return Err(ContentIdError::Netpbm(format!(
                    "unsupported magic {:?} (only binary P5/P6)",
                    String::from_utf8_lossy(other)
                )))
            }
        };
        let width = next_int(data, &mut cursor, "width")?;
        let height = next_int(data, &mut cursor, "height")?;
        let maxval = next_int(data, &mut cursor, "maxval")?;
        if maxval == 0 || maxval > 255 {
            return Err(ContentIdError::Netpbm(format!(
                "maxval {maxval} out of 8-bit range"
            )));
        }
        // Exactly one whitespace byte separates the header from raster data.
        cursor += 1;
        let expected = width as usize * height as usize * channels as usize;
        let raster = data
            .get(cursor..cursor + expected)
            .ok_or_else(|| ContentIdError::Netpbm("truncated raster data".into()))?;
        ImageBuffer::new(width, height, channels, raster.to_vec())
    }

    /// Encode as binary netpbm: P5 for grayscale, P6 for RGB, maxval 255.
    pub fn to_netpbm(&self) -> Vec<u8> {
        let magic = if self.channels == 1 { "P5" } else { "P6" };
        let mut out = format!("{magic}\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn from_netpbm_file(path: &std::path::Path) -> Result<Self, ContentIdError> {
        let data = std::fs::read(path)
            .map_err(|e| ContentIdError::Netpbm(format!("{}: {e}", path.display())))?;
        Self::from_netpbm(&data)
    }

    pub fn write_netpbm_file(&self, path: &std::path::Path) -> Result<(), ContentIdError> {
        std::fs::write(path, self.to_netpbm())
            .map_err(|e| ContentIdError::Netpbm(format!("{}: {e}", path.display())))
    }
}

/// Read the next whitespace-delimited token, skipping `#` comments.
fn next_token(data: &[u8], cursor: &mut usize) -> Option<Vec<u8>> {
    while *cursor < data.len() {
        let b = data[*cursor];
        if b == b'#' {
            while *cursor < data.len() && data[*cursor] != b'\n' {
                *cursor += 1;
            }
        } else if b.is_ascii_whitespace() {
            *cursor += 1;
        } else {
            break;
        }
    }
    if *cursor >= data.len() {
        return None;
    }
    let start = *cursor;
    while *cursor < data.len() && !data[*cursor].is_ascii_whitespace() {
        *cursor += 1;
    }
    Some(data[start..*cursor].to_vec())
}

fn next_int(data: &[u8], cursor: &mut usize, what: &str) -> Result<u32, ContentIdError> {
    let token = next_token(data, cursor)
        .ok_or_else(|| ContentIdError::Netpbm(format!("missing {what}")))?;
    std::str::from_utf8(&token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ContentIdError::Netpbm(format!("bad {what}")))
}
