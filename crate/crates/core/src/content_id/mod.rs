//! Durable content identification: perceptual fingerprints, Hamming
//! indexing, an LSB watermark, and the collision mathematics that bound
//! how far a fingerprint key space stretches.

mod collision;
mod fingerprint;
mod image;
mod index;
pub mod synth;
mod watermark;

pub use collision::collision_probability;
pub use fingerprint::{hamming, phash, Fingerprint, HashAlgorithm};
pub use image::ImageBuffer;
pub use index::FingerprintIndex;
pub use watermark::{embed_watermark, extract_watermark};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContentIdError {
    #[error("image is {width}x{height}; fingerprinting needs at least 8x8")]
    ImageTooSmall { width: u32, height: u32 },
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("netpbm: {0}")]
    Netpbm(String),
    #[error("fingerprint algorithm mismatch: {left} vs {right}")]
    AlgorithmMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("bad fingerprint: {0}")]
    BadFingerprint(String),
    #[error("watermark needs {needed} carrier pixels, image has {available}")]
    WatermarkCapacity { needed: usize, available: usize },
    #[error("watermark repetition must be at least 1")]
    InvalidRepetition,
}
