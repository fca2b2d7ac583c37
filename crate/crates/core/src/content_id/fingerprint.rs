//! DCT perceptual fingerprints and Hamming matching.
//!
//! The pipeline is pinned for cross-platform determinism: integer luma,
//! bilinear resize in f64, orthonormal 2-D DCT-II in f64, and every
//! coefficient rounded to 6 decimal places before any comparison. Rounding
//! absorbs libm differences between platforms; after it, the bit decisions
//! are exact comparisons.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ContentIdError, ImageBuffer};

/// Fingerprint algorithm tag. `PHash64` resizes to 32x32 and keeps the
/// top-left 8x8 DCT block; `PHash256` resizes to 64x64 and keeps 16x16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HashAlgorithm {
    PHash64,
    PHash256,
}

impl HashAlgorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            HashAlgorithm::PHash64 => "phash64",
            HashAlgorithm::PHash256 => "phash256",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self, ContentIdError> {
        match tag {
            "phash64" => Ok(HashAlgorithm::PHash64),
            "phash256" => Ok(HashAlgorithm::PHash256),
            other => Err(ContentIdError::BadFingerprint(format!(
                "unknown algorithm tag {other:?}"
            ))),
        }
    }

    /// Total fingerprint width in bits.
    pub fn bits(&self) -> u32 {
        match self {
            HashAlgorithm::PHash64 => 64,
            HashAlgorithm::PHash256 => 256,
        }
    }

    fn resize_dim(&self) -> usize {
        match self {
            HashAlgorithm::PHash64 => 32,
            HashAlgorithm::PHash256 => 64,
        }
    }

    fn block_dim(&self) -> usize {
        match self {
            HashAlgorithm::PHash64 => 8,
            HashAlgorithm::PHash256 => 16,
        }
    }
}

impl std::fmt::Display for HashAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A perceptual hash bit vector. Bit index 0 is the most significant bit
/// of the first byte.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    algorithm: HashAlgorithm,
    bits: Vec<u8>,
}

impl Fingerprint {
    pub fn from_bytes(algorithm: HashAlgorithm, bytes: Vec<u8>) -> Result<Self, ContentIdError> {
        if bytes.len() * 8 != algorithm.bits() as usize {
            return Err(ContentIdError::BadFingerprint(format!(
                "{} needs {} bits, got {}",
                algorithm.tag(),
                algorithm.bits(),
                bytes.len() * 8
            )));
        }
        Ok(Fingerprint {
            algorithm,
            bits: bytes,
        })
    }

    pub fn algorithm(&self) -> HashAlgorithm {
        self.algorithm
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, index: usize) -> bool {
        (self.bits[index / 8] >> (7 - index % 8)) & 1 == 1
    }

    /// Render as algorithm-tagged lowercase hex, e.g.
    /// `phash64:8000000000000000`.
    pub fn render(&self) -> String {
        format!("{}:{}", self.algorithm.tag(), hex::encode(&self.bits))
    }

    /// Parse the `tag:hex` rendering produced by [`Fingerprint::render`].
    pub fn parse(s: &str) -> Result<Self, ContentIdError> {
        let (tag, hex_part) = s
            .split_once(':')
            .ok_or_else(|| ContentIdError::BadFingerprint(format!("missing tag in {s:?}")))?;
        let algorithm = HashAlgorithm::from_tag(tag)?;
        if hex_part.bytes().any(|b| b.is_ascii_uppercase()) {
            return Err(ContentIdError::BadFingerprint(format!(
                "fingerprint hex must be lowercase in {s:?}"
            )));
        }
        let bytes = hex::decode(hex_part)
            .map_err(|e| ContentIdError::BadFingerprint(format!("{s:?}: {e}")))?;
        Fingerprint::from_bytes(algorithm, bytes)
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fingerprint({})", self.render())
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Fingerprint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Fingerprint::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Compute the perceptual hash of an image.
///
/// Steps: luma plane, bilinear resize to NxN, orthonormal 2-D DCT-II,
/// coefficients rounded to 6 decimals, top-left BxB block row major
/// (DC included), median = lower of the two middle values, bit set iff
/// coefficient is strictly greater than the median (ties give 0).
pub fn phash(image: &ImageBuffer, algorithm: HashAlgorithm) -> Result<Fingerprint, ContentIdError> {
    if image.width() < 8 || image.height() < 8 {
        return Err(ContentIdError::ImageTooSmall {
            width: image.width(),
            height: image.height(),
        });
    }
    let n = algorithm.resize_dim();
    let b = algorithm.block_dim();

    let luma = image.luma();
    let small = resize_bilinear(
        &luma,
        image.width() as usize,
        image.height() as usize,
        n,
    );
    let coeffs = dct2d(&small, n);

    let mut block = Vec::with_capacity(b * b);
    for row in 0..b {
        for col in 0..b {
            block.push(round6(coeffs[row * n + col]));
        }
    }

    let mut sorted = block.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[b * b / 2 - 1];

    let mut bytes = vec![0u8; b * b / 8];
    for (i, &c) in block.iter().enumerate() {
        if c > median {
            bytes[i / 8] |= 1 << (7 - i % 8);
        }
    }
    Fingerprint::from_bytes(algorithm, bytes)
}

/// Hamming distance between two fingerprints of the same algorithm.
pub fn hamming(a: &Fingerprint, b: &Fingerprint) -> Result<u32, ContentIdError> {
    if a.algorithm != b.algorithm {
        return Err(ContentIdError::AlgorithmMismatch {
            left: a.algorithm.tag(),
            right: b.algorithm.tag(),
        });
    }
    Ok(a.bits
        .iter()
        .zip(&b.bits)
        .map(|(x, y)| (x ^ y).count_ones())
        .sum())
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Center-aligned bilinear resample of a `w x h` plane to `n x n`, in f64.
fn resize_bilinear(src: &[u8], w: usize, h: usize, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * n);
    let sx_scale = w as f64 / n as f64;
    let sy_scale = h as f64 / n as f64;
    for dy in 0..n {
        let sy = ((dy as f64 + 0.5) * sy_scale - 0.5).clamp(0.0, (h - 1) as f64);
        let y0 = sy.floor() as usize;
        let y1 = (y0 + 1).min(h - 1);
        let fy = sy - y0 as f64;
        for dx in 0..n {
            let sx = ((dx as f64 + 0.5) * sx_scale - 0.5).clamp(0.0, (w - 1) as f64);
            let x0 = sx.floor() as usize;
            let x1 = (x0 + 1).min(w - 1);
            let fx = sx - x0 as f64;
            let p00 = src[y0 * w + x0] as f64;
            let p01 = src[y0 * w + x1] as f64;
            let p10 = src[y1 * w + x0] as f64;
            let p11 = src[y1 * w + x1] as f64;
            let top = p00 + (p01 - p00) * fx;
            let bottom = p10 + (p11 - p10) * fx;
            out.push(top + (bottom - top) * fy);
        }
    }
    out
}

/// Separable orthonormal 2-D DCT-II of an `n x n` plane.
fn dct2d(plane: &[f64], n: usize) -> Vec<f64> {
    // table[k][j] = alpha(k) * cos(pi * (2j+1) * k / (2n))
    let mut table = vec![0.0f64; n * n];
    let a0 = (1.0 / n as f64).sqrt();
    let ak = (2.0 / n as f64).sqrt();
    for k in 0..n {
        let alpha = if k == 0 { a0 } else { ak };
        for j in 0..n {
            table[k * n + j] =
                alpha * (std::f64::consts::PI * (2 * j + 1) as f64 * k as f64 / (2 * n) as f64).cos();
        }
    }

    // Rows, then columns.
    let mut rows = vec![0.0f64; n * n];
    for y in 0..n {
        for k in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += plane[y * n + j] * table[k * n + j];
            }
            rows[y * n + k] = acc;
        }
    }
    let mut out = vec![0.0f64; n * n];
    for x in 0..n {
        for k in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += rows[j * n + x] * table[k * n + j];
            }
            out[k * n + x] = acc;
        }
    }
    out
}
