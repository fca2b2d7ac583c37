//! Least-significant-bit watermark carrying a 64-bit identifier.
//!
//! The payload is written into the LSB of the carrier sample (the gray
//! sample, or the green channel for RGB) at pseudorandom pixel positions
//! derived from a 32-byte key, each bit repeated `repetition` times.
//! Extraction takes a per-bit majority vote and reports the payload as
//! present only when at least 60% of the payload bits have a unanimous
//! vote; random unwatermarked content fails that bar with overwhelming
//! probability for any repetition >= 2.

use std::collections::HashSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{ContentIdError, ImageBuffer};

const PAYLOAD_BITS: usize = 64;
/// Fraction (percent) of payload bits that must be unanimous for the
/// watermark to count as present.
const PRESENCE_THRESHOLD_PCT: usize = 60;

/// Embed `payload` into a copy of `image`. Changes each touched sample by
/// at most one intensity level.
pub fn embed_watermark(
    image: &ImageBuffer,
    payload: u64,
    key: &[u8; 32],
    repetition: usize,
) -> Result<ImageBuffer, ContentIdError> {
    let positions = carrier_positions(image, key, repetition)?;
    let mut out = image.clone();
    let channels = out.channels() as usize;
    let channel_offset = if channels == 3 { 1 } else { 0 };
    let pixels = out.pixels_mut();
    for (slot, &pixel_index) in positions.iter().enumerate() {
        let bit = (payload >> (PAYLOAD_BITS - 1 - slot / repetition)) & 1;
        let sample = &mut pixels[pixel_index * channels + channel_offset];
        *sample = (*sample & !1) | bit as u8;
    }
    Ok(out)
}

/// Recover the payload embedded with the same key and repetition, or
/// `None` when no watermark is detectable.
pub fn extract_watermark(
    image: &ImageBuffer,
    key: &[u8; 32],
    repetition: usize,
) -> Result<Option<u64>, ContentIdError> {
    let positions = carrier_positions(image, key, repetition)?;
    let channels = image.channels() as usize;
    let channel_offset = if channels == 3 { 1 } else { 0 };
    let pixels = image.pixels();

    let mut payload = 0u64;
    let mut unanimous = 0usize;
    for bit_index in 0..PAYLOAD_BITS {
        let mut ones = 0usize;
        for rep in 0..repetition {
            let pixel_index = positions[bit_index * repetition + rep];
            ones += (pixels[pixel_index * channels + channel_offset] & 1) as usize;
        }
        if ones * 2 > repetition {
            payload |= 1 << (PAYLOAD_BITS - 1 - bit_index);
        }
        if ones == 0 || ones == repetition {
            unanimous += 1;
        }
    }
    if unanimous * 100 < PRESENCE_THRESHOLD_PCT * PAYLOAD_BITS {
        return Ok(None);
    }
    Ok(Some(payload))
}

/// Distinct pixel positions for every (bit, repetition) slot, derived
/// deterministically from the key via a ChaCha20 stream. Slot `k*r + j`
/// holds copy `j` of payload bit `k`.
fn carrier_positions(
    image: &ImageBuffer,
    key: &[u8; 32],
    repetition: usize,
) -> Result<Vec<usize>, ContentIdError> {
    if repetition == 0 {
        return Err(ContentIdError::InvalidRepetition);
    }
    let pixel_count = image.width() as usize * image.height() as usize;
    let needed = PAYLOAD_BITS * repetition;
    if pixel_count < needed {
        return Err(ContentIdError::WatermarkCapacity {
            needed,
            available: pixel_count,
        });
    }
    let mut rng = ChaCha20Rng::from_seed(*key);
    let mut taken = HashSet::with_capacity(needed);
    let mut positions = Vec::with_capacity(needed);
    while positions.len() < needed {
        let candidate = (rng.next_u64() % pixel_count as u64) as usize;
        if taken.insert(candidate) {
            positions.push(candidate);
        }
    }
    Ok(positions)
}
