//! Birthday-bound collision probability for fingerprint key spaces.

/// Probability that any two of `n_assets` uniformly random `bits`-wide
/// identifiers collide: `1 - exp(-n^2 / 2^(bits+1))`, clamped to [0, 1].
///
/// At 64 bits the bound reaches 50% near 5 billion assets, which is why a
/// 64-bit fingerprint alone cannot serve as a global identifier.
pub fn collision_probability(n_assets: u64, bits: u32) -> f64 {
    let n = n_assets as f64;
    let keyspace = 2f64.powi(bits.saturating_add(1).min(i32::MAX as u32) as i32);
    let exponent = -(n * n) / keyspace;
    // -expm1(-x) = 1 - e^-x without cancellation for small x.
    (-exponent.exp_m1()).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifty_percent_near_five_billion_assets_at_64_bits() {
        let p = collision_probability(5_060_000_000, 64);
        assert!((0.49..=0.51).contains(&p), "p = {p}");
    }

    #[test]
    fn zero_assets_never_collide() {
        assert_eq!(collision_probability(0, 64), 0.0);
        assert_eq!(collision_probability(1, 64), collision_probability(1, 64));
    }

    #[test]
    fn known_value_at_24_bits() {
        // n = 4096, bits = 24: n^2 / 2^25 = 1/2, so P = 1 - e^(-1/2).
        let p = collision_probability(4096, 24);
        let expected = 1.0 - (-0.5f64).exp();
        assert!((p - expected).abs() < 1e-12, "p = {p}");
        assert!((expected - 0.3935).abs() < 1e-4);
    }

    #[test]
    fn monotone_in_assets_and_antitone_in_bits() {
        let mut last = 0.0;
        for n in [0u64, 1, 10, 1000, 1 << 20, 1 << 40, u64::MAX] {
            let p = collision_probability(n, 64);
            assert!(p >= last, "not nondecreasing at n={n}");
            last = p;
        }
        let mut last = 1.0;
        for bits in [1u32, 8, 24, 64, 128, 256] {
            let p = collision_probability(1 << 20, bits);
            assert!(p <= last, "not nonincreasing at bits={bits}");
            last = p;
        }
    }

    #[test]
    fn always_a_probability() {
        for (n, bits) in [(u64::MAX, 1), (0, 1), (u64::MAX, 4000), (7, 256)] {
            let p = collision_probability(n, bits);
            assert!((0.0..=1.0).contains(&p));
        }
    }
}
