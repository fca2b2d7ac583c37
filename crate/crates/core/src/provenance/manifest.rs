//! Manifest creation and validation.

use crate::identity::{sha256, verify, Digest, KeyPair, PublicKey};

use super::{Assertion, Claim, Manifest, ProvenanceError, TrainingMiningEntry};

/// Manifest ids are content-derived: `urn:arc:` plus the first 32 hex
/// characters of the canonical claim digest. No id authority needed.
pub(crate) fn manifest_id_for(claim_bytes: &[u8]) -> String {
    format!("urn:arc:{}", &hex::encode(sha256(claim_bytes))[..32])
}

/// Build and sign a manifest over `asset`.
///
/// The mandatory hash binding is computed here and placed first; callers
/// supply only the optional assertions and must not include their own
/// hash binding.
pub fn create_manifest(
    asset: &[u8],
    assertions: Vec<Assertion>,
    signer: &KeyPair,
    generator: &str,
    timestamp: i64,
) -> Result<Manifest, ProvenanceError> {
    if timestamp < 0 {
        return Err(ProvenanceError::NegativeTimestamp(timestamp));
    }
    if assertions
        .iter()
        .any(|a| matches!(a, Assertion::HashBinding { .. }))
    {
        return Err(ProvenanceError::DuplicateHashBinding);
    }

    let mut all = Vec::with_capacity(assertions.len() + 1);
    all.push(Assertion::HashBinding {
        digest: Digest::of(asset),
    });
    all.extend(assertions);

    let claim = Claim {
        assertion_digests: all.iter().map(Assertion::digest).collect(),
        claim_generator: generator.to_string(),
        timestamp,
    };
    let claim_bytes = claim.canonical_bytes();

    Ok(Manifest {
        manifest_id: manifest_id_for(&claim_bytes),
        assertions: all,
        claim,
        signer_key: signer.public_key(),
        signature: signer.sign(&claim_bytes),
    })
}

/// One independently detectable way a manifest can fail validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationFailure {
    /// Asset bytes do not match the hash binding digest.
    HashMismatch,
    /// Claim signature does not verify against the embedded signer key.
    BadSignature,
    /// Some assertion's digest differs from the claim's list (or the
    /// counts differ).
    BadAssertionDigest,
    /// Signer key is not in the caller's trust anchor set.
    UntrustedSigner,
    /// Not exactly one hash binding assertion.
    MissingHashBinding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Validate a manifest against asset bytes and a set of trusted signer
/// keys. Integrity failures (hashes, digests, signature) and the trust
/// failure (signer not anchored) are reported independently; the report
/// lists every failure it finds.
pub fn validate_manifest(
    asset: &[u8],
    manifest: &Manifest,
    trust_anchors: &[PublicKey],
) -> ValidationReport {
    let mut failures = Vec::new();

    // Assertion digests must match the claim's list, position by position.
    let digests_ok = manifest.claim.assertion_digests.len() == manifest.assertions.len()
        && manifest
            .assertions
            .iter()
            .zip(&manifest.claim.assertion_digests)
            .all(|(assertion, digest)| assertion.digest() == *digest);
    if !digests_ok {
        failures.push(ValidationFailure::BadAssertionDigest);
    }

    // Exactly one hash binding, and it must match the asset bytes.
    let bindings: Vec<&Digest> = manifest
        .assertions
        .iter()
        .filter_map(|a| match a {
            Assertion::HashBinding { digest } => Some(digest),
            _ => None,
        })
        .collect();
    if bindings.len() != 1 {
        failures.push(ValidationFailure::MissingHashBinding);
    } else if *bindings[0] != Digest::of(asset) {
        failures.push(ValidationFailure::HashMismatch);
    }

    let claim_bytes = manifest.claim.canonical_bytes();
    if !verify(&claim_bytes, &manifest.signature, &manifest.signer_key) {
        failures.push(ValidationFailure::BadSignature);
    }

    if !trust_anchors.contains(&manifest.signer_key) {
        failures.push(ValidationFailure::UntrustedSigner);
    }

    failures.sort();
    failures.dedup();
    ValidationReport { failures }
}

/// The manifest's training/mining consent entry, if it states one.
///
/// Absence carries no implication either way; it is represented as
/// `None`, never defaulted. Multiple entries make consent ambiguous and
/// are an error.
pub fn extract_training_mining(
    manifest: &Manifest,
) -> Result<Option<TrainingMiningEntry>, ProvenanceError> {
    let mut found = None;
    for assertion in &manifest.assertions {
        if let Assertion::TrainingMining(entry) = assertion {
            if found.is_some() {
                return Err(ProvenanceError::AmbiguousConsent);
            }
            found = Some(*entry);
        }
    }
    Ok(found)
}
