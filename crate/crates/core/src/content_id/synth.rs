//! Synthetic image generators for fixtures, demos, and the test suite.
//!
//! `smooth` stands in for natural photographs: its energy is spread across
//! the low-frequency DCT block the fingerprint looks at, so perceptual
//! hashes of independently drawn images are independent while each image
//! stays robust to small pixel noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::ImageBuffer;

/// Uniform image of a single gray value.
pub fn flat(width: u32, height: u32, value: u8) -> ImageBuffer {
    ImageBuffer::new(
        width,
        height,
        1,
        vec![value; width as usize * height as usize],
    )
    .expect("valid dimensions")
}

/// Smooth pseudo-random grayscale image: a random mixture of low-frequency
/// cosines around mid gray. Deterministic in `seed`.
pub fn smooth(seed: u64, width: u32, height: u32) -> ImageBuffer {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut amplitudes = [[0.0f64; 8]; 8];
    for (u, row) in amplitudes.iter_mut().enumerate() {
        for (v, a) in row.iter_mut().enumerate() {
            if u == 0 && v == 0 {
                continue;
            }
            let scale = 40.0 / (1.0 + (u + v) as f64 / 2.0);
            *a = (rng.gen::<f64>() * 2.0 - 1.0) * scale;
        }
    }
    let w = width as usize;
    let h = height as usize;
    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let mut value = 128.0;
            for (u, row) in amplitudes.iter().enumerate() {
                for (v, &a) in row.iter().enumerate() {
                    if a == 0.0 {
                        continue;
                    }
                    value += a
                        * (std::f64::consts::PI * u as f64 * (y as f64 + 0.5) / h as f64).cos()
                        * (std::f64::consts::PI * v as f64 * (x as f64 + 0.5) / w as f64).cos();
                }
            }
            pixels.push(value.round().clamp(0.0, 255.0) as u8);
        }
    }
    ImageBuffer::new(width, height, 1, pixels).expect("valid dimensions")
}

/// Independent uniform-noise grayscale image. Deterministic in `seed`.
pub fn noise(seed: u64, width: u32, height: u32) -> ImageBuffer {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pixels = (0..width as usize * height as usize)
        .map(|_| rng.gen())
        .collect();
    ImageBuffer::new(width, height, 1, pixels).expect("valid dimensions")
}

/// Add zero-mean Gaussian noise of standard deviation `sigma` (8-bit
/// scale) to every sample, clamping to [0, 255]. Deterministic in `seed`.
pub fn add_gaussian_noise(image: &ImageBuffer, seed: u64, sigma: f64) -> ImageBuffer {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pixels = image
        .pixels()
        .iter()
        .map(|&p| {
            // Box-Muller transform.
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
            (p as f64 + sigma * z).round().clamp(0.0, 255.0) as u8
        })
        .collect();
    ImageBuffer::new(image.width(), image.height(), image.channels(), pixels)
        .expect("same dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(smooth(5, 24, 24), smooth(5, 24, 24));
        assert_eq!(noise(5, 24, 24), noise(5, 24, 24));
        assert_ne!(smooth(5, 24, 24), smooth(6, 24, 24));
    }

    #[test]
    fn noise_addition_stays_within_range_and_close() {
        let img = smooth(1, 16, 16);
        let noisy = add_gaussian_noise(&img, 2, 4.0);
        let max_delta = img
            .pixels()
            .iter()
            .zip(noisy.pixels())
            .map(|(&a, &b)| (a as i16 - b as i16).unsigned_abs())
            .max()
            .unwrap();
        assert!(max_delta < 30, "sigma-4 noise moved a pixel by {max_delta}");
    }
}
