//! Signed provenance manifests.
//!
//! A manifest bundles assertions about an asset, a claim that digests them
//! in order, and a signature over the canonical claim bytes. The only
//! mandatory assertion is the hash binding, which ties the manifest to the
//! exact asset bytes; everything else (soft bindings, creation info,
//! training/mining consent, ingredients) is optional. Ingredient
//! assertions link manifests into a provenance graph.

mod graph;
mod manifest;

pub use graph::{provenance_graph, ProvenanceGraph};
pub use manifest::{
    create_manifest, extract_training_mining, validate_manifest, ValidationFailure,
    ValidationReport,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::content_id::Fingerprint;
use crate::identity::{CanonicalError, Digest, PublicKey, Signature};

#[derive(Debug, Error)]
pub enum ProvenanceError {
    #[error("hash binding is added automatically; caller supplied one")]
    DuplicateHashBinding,
    #[error("claim timestamp must be >= 0, got {0}")]
    NegativeTimestamp(i64),
    #[error("soft binding must carry a fingerprint and/or a watermark id")]
    EmptySoftBinding,
    #[error("manifest carries multiple training/mining assertions; consent is ambiguous")]
    AmbiguousConsent,
    #[error("ingredient cycle detected involving manifest {0}")]
    CycleDetected(String),
    #[error("duplicate manifest id {0}")]
    DuplicateManifestId(String),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
}

/// Consent decision for one usage category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsentDecision {
    Allowed,
    NotAllowed,
    Constrained,
}

/// The four granular AI/mining usage categories carried by consent
/// signals and training/mining assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UsageCategory {
    DataMining,
    AiTraining,
    AiGenerativeTraining,
    AiInference,
}

impl UsageCategory {
    pub const ALL: [UsageCategory; 4] = [
        UsageCategory::DataMining,
        UsageCategory::AiTraining,
        UsageCategory::AiGenerativeTraining,
        UsageCategory::AiInference,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            UsageCategory::DataMining => "data_mining",
            UsageCategory::AiTraining => "ai_training",
            UsageCategory::AiGenerativeTraining => "ai_generative_training",
            UsageCategory::AiInference => "ai_inference",
        }
    }
}

/// Per-category consent map. All four categories are always present;
/// an asset with no stated preference simply has no entry at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainingMiningEntry {
    pub data_mining: ConsentDecision,
    pub ai_training: ConsentDecision,
    pub ai_generative_training: ConsentDecision,
    pub ai_inference: ConsentDecision,
}

impl TrainingMiningEntry {
    pub fn uniform(decision: ConsentDecision) -> Self {
        TrainingMiningEntry {
            data_mining: decision,
            ai_training: decision,
            ai_generative_training: decision,
            ai_inference: decision,
        }
    }

    pub fn get(&self, category: UsageCategory) -> ConsentDecision {
        match category {
            UsageCategory::DataMining => self.data_mining,
            UsageCategory::AiTraining => self.ai_training,
            UsageCategory::AiGenerativeTraining => self.ai_generative_training,
            UsageCategory::AiInference => self.ai_inference,
        }
    }

    pub fn set(&mut self, category: UsageCategory, decision: ConsentDecision) {
        match category {
            UsageCategory::DataMining => self.data_mining = decision,
            UsageCategory::AiTraining => self.ai_training = decision,
            UsageCategory::AiGenerativeTraining => self.ai_generative_training = decision,
            UsageCategory::AiInference => self.ai_inference = decision,
        }
    }
}

/// A single provenance fact. The hash binding variant is mandatory in
/// every manifest and is added by [`create_manifest`] itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Assertion {
    HashBinding {
        digest: Digest,
    },
    SoftBinding {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fingerprint: Option<Fingerprint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        watermark_id: Option<u64>,
    },
    CreationInfo {
        fields: BTreeMap<String, String>,
    },
    TrainingMining(TrainingMiningEntry),
    Ingredient {
        manifest_id: String,
    },
}

impl Assertion {
    /// Soft binding assertion; at least one identifier must be present.
    pub fn soft_binding(
        fingerprint: Option<Fingerprint>,
        watermark_id: Option<u64>,
    ) -> Result<Self, ProvenanceError> {
        if fingerprint.is_none() && watermark_id.is_none() {
            return Err(ProvenanceError::EmptySoftBinding);
        }
        Ok(Assertion::SoftBinding {
            fingerprint,
            watermark_id,
        })
    }

    pub fn ingredient(manifest_id: impl Into<String>) -> Self {
        Assertion::Ingredient {
            manifest_id: manifest_id.into(),
        }
    }

    /// Digest of the assertion's canonical bytes; this is what claims
    /// list.
    pub fn digest(&self) -> Digest {
        let value = serde_json::to_value(self).expect("assertions contain no floats");
        Digest::from_bytes(
            crate::identity::canonical_digest(&value).expect("assertions contain no floats"),
        )
    }
}

/// Orders assertion digests and names the generator; the signature covers
/// this structure's canonical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub assertion_digests: Vec<Digest>,
    pub claim_generator: String,
    pub timestamp: i64,
}

impl Claim {
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let value = serde_json::to_value(self).expect("claims contain no floats");
        crate::identity::canonical_bytes(&value).expect("claims contain no floats")
    }
}

/// A signed provenance manifest. `signer_key` makes integrity checks
/// self-contained; whether that key is *trusted* is a separate question
/// answered against a caller-supplied anchor set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub manifest_id: String,
    pub assertions: Vec<Assertion>,
    pub claim: Claim,
    pub signer_key: PublicKey,
    pub signature: Signature,
}

impl Manifest {
    /// The canonical sidecar encoding (`.arcm` files hold exactly this).
    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        let value = serde_json::to_value(self).expect("manifests contain no floats");
        crate::identity::canonical_bytes(&value).expect("manifests contain no floats")
    }

    pub fn from_slice(data: &[u8]) -> Result<Self, CanonicalError> {
        let value = crate::identity::parse_document(data)?;
        serde_json::from_value(value).map_err(|e| CanonicalError::Parse(e.to_string()))
    }

    /// The asset digest in the mandatory hash binding, if exactly one is
    /// present.
    pub fn hash_binding(&self) -> Option<Digest> {
        let mut found = None;
        for assertion in &self.assertions {
            if let Assertion::HashBinding { digest } = assertion {
                if found.is_some() {
                    return None;
                }
                found = Some(*digest);
            }
        }
        found
    }

    /// Fingerprint from the first soft-binding assertion, if any.
    pub fn soft_binding_fingerprint(&self) -> Option<&Fingerprint> {
        self.assertions.iter().find_map(|a| match a {
            Assertion::SoftBinding {
                fingerprint: Some(fp),
                ..
            } => Some(fp),
            _ => None,
        })
    }

    /// Ingredient manifest ids, in assertion order.
    pub fn ingredients(&self) -> impl Iterator<Item = &str> {
        self.assertions.iter().filter_map(|a| match a {
            Assertion::Ingredient { manifest_id } => Some(manifest_id.as_str()),
            _ => None,
        })
    }
}
