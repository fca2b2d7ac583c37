//! Fingerprint index: nearest-neighbour lookup under Hamming distance.
//!
//! The current implementation is an exact linear scan. The interface is
//! the contract; a sublinear structure (BK-tree, multi-index hashing) can
//! replace the scan without touching callers.

use super::{hamming, ContentIdError, Fingerprint, HashAlgorithm};

#[derive(Debug, Clone)]
pub struct FingerprintIndex {
    algorithm: HashAlgorithm,
    entries: Vec<(Fingerprint, String)>,
}

impl FingerprintIndex {
    pub fn new(algorithm: HashAlgorithm) -> Self {
        FingerprintIndex {
            algorithm,
            entries: Vec::new(),
        }
    }

    pub fn algorithm(&self) -> HashAlgorithm {
        self.algorithm
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Fingerprint, &str)> {
        self.entries.iter().map(|(fp, key)| (fp, key.as_str()))
    }

    pub fn insert(
        &mut self,
        fingerprint: Fingerprint,
        key: impl Into<String>,
    ) -> Result<(), ContentIdError> {
        if fingerprint.algorithm() != self.algorithm {
            return Err(ContentIdError::AlgorithmMismatch {
                left: self.algorithm.tag(),
                right: fingerprint.algorithm().tag(),
            });
        }
        self.entries.push((fingerprint, key.into()));
        Ok(())
    }

    /// All entries within `max_distance` of the probe, sorted ascending by
    /// `(distance, key)`.
    pub fn query(
        &self,
        probe: &Fingerprint,
        max_distance: u32,
    ) -> Result<Vec<(String, u32)>, ContentIdError> {
        if probe.algorithm() != self.algorithm {
            return Err(ContentIdError::AlgorithmMismatch {
                left: self.algorithm.tag(),
                right: probe.algorithm().tag(),
            });
        }
        let mut hits = Vec::new();
        for (fp, key) in &self.entries {
            let d = hamming(probe, fp)?;
            if d <= max_distance {
                hits.push((key.clone(), d));
            }
        }
        hits.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        Ok(hits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn fp64(bytes: [u8; 8]) -> Fingerprint {
        Fingerprint::from_bytes(HashAlgorithm::PHash64, bytes.to_vec()).unwrap()
    }

    #[test]
    fn empty_index_returns_no_hits() {
        let index = FingerprintIndex::new(HashAlgorithm::PHash64);
        assert!(index.query(&fp64([0; 8]), 64).unwrap().is_empty());
    }

    #[test]
    fn exact_probe_at_distance_zero() {
        let mut index = FingerprintIndex::new(HashAlgorithm::PHash64);
        let fp = fp64([1, 2, 3, 4, 5, 6, 7, 8]);
        index.insert(fp.clone(), "k1").unwrap();
        assert_eq!(index.query(&fp, 0).unwrap(), vec![("k1".to_string(), 0)]);
    }

    #[test]
    fn algorithm_mismatch_rejected() {
        let mut index = FingerprintIndex::new(HashAlgorithm::PHash64);
        let fp256 =
            Fingerprint::from_bytes(HashAlgorithm::PHash256, vec![0; 32]).unwrap();
        assert!(index.insert(fp256.clone(), "x").is_err());
        assert!(index.query(&fp256, 0).is_err());
    }

    #[test]
    fn ordering_is_by_distance_then_key() {
        let mut index = FingerprintIndex::new(HashAlgorithm::PHash64);
        index.insert(fp64([0; 8]), "b").unwrap();
        index.insert(fp64([0; 8]), "a").unwrap();
        index.insert(fp64([1, 0, 0, 0, 0, 0, 0, 0]), "c").unwrap();
        assert_eq!(
            index.query(&fp64([0; 8]), 8).unwrap(),
            vec![
                ("a".to_string(), 0),
                ("b".to_string(), 0),
                ("c".to_string(), 1)
            ]
        );
    }

    /// Independent naive scan used as the query oracle.
    fn oracle(
        entries: &[([u8; 8], String)],
        probe: [u8; 8],
        max: u32,
    ) -> Vec<(String, u32)> {
        let mut hits: Vec<(String, u32)> = entries
            .iter()
            .filter_map(|(bytes, key)| {
                let d: u32 = bytes
                    .iter()
                    .zip(&probe)
                    .map(|(a, b)| (a ^ b).count_ones())
                    .sum();
                (d <= max).then(|| (key.clone(), d))
            })
            .collect();
        hits.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        hits
    }

    #[test]
    fn query_agrees_with_linear_scan_oracle_at_scale() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let mut index = FingerprintIndex::new(HashAlgorithm::PHash64);
        let mut raw = Vec::new();
        for i in 0..10_000 {
            let bytes: [u8; 8] = rng.gen();
            index.insert(fp64(bytes), format!("k{i:05}")).unwrap();
            raw.push((bytes, format!("k{i:05}")));
        }
        // A probe equal to a stored entry ranks that entry first at max=3.
        let (target_bytes, target_key) = raw[1234].clone();
        let hits = index.query(&fp64(target_bytes), 3).unwrap();
        assert_eq!(hits[0], (target_key, 0));
        assert_eq!(hits, oracle(&raw, target_bytes, 3));

        for _ in 0..20 {
            let probe: [u8; 8] = rng.gen();
            let max = rng.gen_range(0..40);
            assert_eq!(
                index.query(&fp64(probe), max).unwrap(),
                oracle(&raw, probe, max)
            );
        }
    }
}
