//! Actor identity: key pairs, wallet-style actor identifiers, and
//! signatures over canonical bytes.
//!
//! Identity here is pseudonymous by design. An [`ActorId`] is derived from
//! a public key and nothing else; binding it to a legal person is out of
//! scope for the protocol.

pub mod canonical;

use ed25519_dalek::{Signer as _, SigningKey, Verifier as _, VerifyingKey};
use rand::rngs::OsRng;
use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use canonical::{
    canonical_bytes, canonical_digest, canonical_string, parse_document, sha256, CanonicalError,
};

/// Byte length of a seed and of a public key.
pub const KEY_LEN: usize = 32;
/// Byte length of a signature.
pub const SIGNATURE_LEN: usize = 64;

const ACTOR_PREFIX: &str = "arc:";
const ACTOR_HEX_LEN: usize = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("seed must be exactly {KEY_LEN} bytes, got {0}")]
    BadSeedLength(usize),
    #[error("public key must be exactly {KEY_LEN} bytes, got {0}")]
    BadKeyLength(usize),
    #[error("signature must be exactly {SIGNATURE_LEN} bytes, got {0}")]
    BadSignatureLength(usize),
    #[error("actor id {0:?} is not \"arc:\" followed by 40 lowercase hex chars")]
    BadActorId(String),
    #[error("digest {0:?} is not 64 hex chars")]
    BadDigest(String),
    #[error("byte sequence is not a valid public key")]
    InvalidKey,
}

/// A 256-bit SHA-2 digest, the hash primitive used everywhere a
/// "cryptographic hash" appears in the protocol. Serialized as 64
/// lowercase hex characters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest([u8; 32]);

impl Digest {
    pub const ZERO: Digest = Digest([0u8; 32]);

    pub fn of(data: &[u8]) -> Self {
        Digest(sha256(data))
    }

    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        Digest(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, IdentityError> {
        let bytes = hex::decode(s).map_err(|_| IdentityError::BadDigest(s.to_string()))?;
        let arr: [u8; 32] = bytes
            .try_into()
            .map_err(|_| IdentityError::BadDigest(s.to_string()))?;
        Ok(Digest(arr))
    }
}

impl std::fmt::Debug for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl std::fmt::Display for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for Digest {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Digest {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Digest::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// A 32-byte Ed25519 public key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PublicKey([u8; KEY_LEN]);

impl PublicKey {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, IdentityError> {
        let arr: [u8; KEY_LEN] = bytes
            .try_into()
            .map_err(|_| IdentityError::BadKeyLength(bytes.len()))?;
        Ok(PublicKey(arr))
    }

    pub fn as_bytes(&self) -> &[u8; KEY_LEN] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, IdentityError> {
        let bytes = hex::decode(s).map_err(|_| IdentityError::InvalidKey)?;
        Self::from_bytes(&bytes)
    }

    /// The actor identifier derived from this key.
    pub fn actor_id(&self) -> ActorId {
        ActorId::from_public_key(self)
    }
}

impl std::fmt::Debug for PublicKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PublicKey({})", self.to_hex())
    }
}

impl Serialize for PublicKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for PublicKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PublicKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Signing key material. The public key is always derivable from the
/// 32-byte secret seed.
#[derive(Clone)]
pub struct KeyPair {
    signing: SigningKey,
}

impl KeyPair {
    /// Generate a fresh key pair from OS randomness.
    pub fn generate() -> Self {
        let mut seed = [0u8; KEY_LEN];
        OsRng.fill_bytes(&mut seed);
        KeyPair {
            signing: SigningKey::from_bytes(&seed),
        }
    }

    /// Deterministically derive a key pair from a 32-byte seed. The same
    /// seed always yields the same key pair.
    pub fn from_seed(seed: &[u8]) -> Result<Self, IdentityError> {
        let arr: [u8; KEY_LEN] = seed
            .try_into()
            .map_err(|_| IdentityError::BadSeedLength(seed.len()))?;
        Ok(KeyPair {
            signing: SigningKey::from_bytes(&arr),
        })
    }

    pub fn public_key(&self) -> PublicKey {
        PublicKey(self.signing.verifying_key().to_bytes())
    }

    pub fn actor_id(&self) -> ActorId {
        self.public_key().actor_id()
    }

    /// The raw 32-byte secret seed. Keep it secret; it fully determines
    /// the key pair.
    pub fn secret_bytes(&self) -> [u8; KEY_LEN] {
        self.signing.to_bytes()
    }

    /// Sign a message. Ed25519 signatures are deterministic, so signing
    /// the same message twice yields identical bytes.
    pub fn sign(&self, message: &[u8]) -> Signature {
        Signature {
            bytes: self.signing.sign(message).to_bytes(),
            signer: self.actor_id(),
        }
    }
}

impl std::fmt::Debug for KeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KeyPair({})", self.actor_id())
    }
}

/// Generate a key pair, optionally from a fixed seed.
pub fn generate_keypair(seed: Option<&[u8]>) -> Result<KeyPair, IdentityError> {
    match seed {
        Some(seed) => KeyPair::from_seed(seed),
        None => Ok(KeyPair::generate()),
    }
}

/// A wallet-style actor identifier: `"arc:"` followed by the first 40
/// lowercase hex characters of the SHA-256 digest of the public key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActorId(String);

impl ActorId {
    pub fn from_public_key(key: &PublicKey) -> Self {
        let digest = sha256(key.as_bytes());
        ActorId(format!(
            "{ACTOR_PREFIX}{}",
            &hex::encode(digest)[..ACTOR_HEX_LEN]
        ))
    }

    /// Parse an actor id, rejecting anything that is not `arc:` plus 40
    /// lowercase hex characters.
    pub fn parse(s: &str) -> Result<Self, IdentityError> {
        let hex_part = s
            .strip_prefix(ACTOR_PREFIX)
            .ok_or_else(|| IdentityError::BadActorId(s.to_string()))?;
        if hex_part.len() != ACTOR_HEX_LEN
            || !hex_part
                .bytes()
                .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
        {
            return Err(IdentityError::BadActorId(s.to_string()));
        }
        Ok(ActorId(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for ActorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Debug for ActorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ActorId({})", self.0)
    }
}

impl std::str::FromStr for ActorId {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActorId::parse(s)
    }
}

impl Serialize for ActorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ActorId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ActorId::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A 64-byte signature tagged with the actor id of its signer.
#[derive(Clone, PartialEq, Eq)]
pub struct Signature {
    bytes: [u8; SIGNATURE_LEN],
    signer: ActorId,
}

impl Signature {
    pub fn from_parts(bytes: &[u8], signer: ActorId) -> Result<Self, IdentityError> {
        let arr: [u8; SIGNATURE_LEN] = bytes
            .try_into()
            .map_err(|_| IdentityError::BadSignatureLength(bytes.len()))?;
        Ok(Signature { bytes: arr, signer })
    }

    pub fn as_bytes(&self) -> &[u8; SIGNATURE_LEN] {
        &self.bytes
    }

    pub fn signer(&self) -> &ActorId {
        &self.signer
    }
}

impl std::fmt::Debug for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Signature({}, by {})", hex::encode(self.bytes), self.signer)
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureWire {
    bytes: String,
    signer: ActorId,
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SignatureWire {
            bytes: hex::encode(self.bytes),
            signer: self.signer.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SignatureWire::deserialize(deserializer)?;
        let bytes = hex::decode(&wire.bytes).map_err(serde::de::Error::custom)?;
        Signature::from_parts(&bytes, wire.signer).map_err(serde::de::Error::custom)
    }
}

/// Verify a signature over a message against a public key.
///
/// Returns `false` (never an error) when the signature does not verify,
/// when the key is not a valid curve point, or when the signature's signer
/// tag does not match the key. A signature is valid against exactly one
/// public key.
pub fn verify(message: &[u8], signature: &Signature, key: &PublicKey) -> bool {
    if signature.signer != key.actor_id() {
        return false;
    }
    let Ok(verifying) = VerifyingKey::from_bytes(key.as_bytes()) else {
        return false;
    };
    let sig = ed25519_dalek::Signature::from_bytes(&signature.bytes);
    verifying.verify(message, &sig).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = generate_keypair(Some(&[0u8; 32])).unwrap();
        let b = generate_keypair(Some(&[0u8; 32])).unwrap();
        assert_eq!(a.public_key(), b.public_key());
    }

    #[test]
    fn distinct_seeds_give_distinct_keys() {
        let mut seed = [0u8; 32];
        let a = generate_keypair(Some(&seed)).unwrap();
        seed[31] = 1;
        let b = generate_keypair(Some(&seed)).unwrap();
        assert_ne!(a.public_key(), b.public_key());
    }

    #[test]
    fn unseeded_generation_is_random() {
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..100 {
            assert!(seen.insert(*KeyPair::generate().public_key().as_bytes()));
        }
    }

    #[test]
    fn bad_seed_length_rejected() {
        assert_eq!(
            generate_keypair(Some(&[0u8; 31])).unwrap_err(),
            IdentityError::BadSeedLength(31)
        );
    }

    #[test]
    fn actor_id_format_and_stability() {
        let key = KeyPair::generate().public_key();
        let id = key.actor_id();
        assert_eq!(id, key.actor_id());
        assert_eq!(id.as_str().len(), 44);
        assert!(id.as_str().starts_with("arc:"));
        assert_eq!(ActorId::parse(id.as_str()).unwrap(), id);
    }

    #[test]
    fn actor_id_rejects_other_shapes() {
        for bad in [
            "",
            "arc:",
            "arc:ABCDEF0123456789abcdef0123456789abcdef01", // uppercase
            "arc:0123456789abcdef0123456789abcdef0123456",  // 39 chars
            "art:0123456789abcdef0123456789abcdef01234567", // wrong prefix
            "arc:0123456789abcdef0123456789abcdef0123456g", // non-hex
        ] {
            assert!(ActorId::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn no_actor_id_collision_over_random_keys() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..10_000 {
            let mut seed = [0u8; 32];
            rng.fill(&mut seed);
            let id = KeyPair::from_seed(&seed).unwrap().actor_id();
            assert!(seen.insert(id.as_str().to_string()));
        }
    }

    #[test]
    fn sign_verify_round_trip_empty_message() {
        let kp = KeyPair::generate();
        let sig = kp.sign(b"");
        assert!(verify(b"", &sig, &kp.public_key()));
    }

    #[test]
    fn single_bit_flip_in_message_fails() {
        let kp = KeyPair::generate();
        let sig = kp.sign(b"hello");
        let mut tampered = b"hello".to_vec();
        tampered[0] ^= 1;
        assert!(!verify(&tampered, &sig, &kp.public_key()));
    }

    #[test]
    fn wrong_public_key_fails() {
        let kp = KeyPair::generate();
        let other = KeyPair::generate();
        let sig = kp.sign(b"msg");
        assert!(!verify(b"msg", &sig, &other.public_key()));
    }

    #[test]
    fn random_messages_sign_verify_and_tamper() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let mut seed = [0u8; 32];
            rng.fill(&mut seed);
            let kp = KeyPair::from_seed(&seed).unwrap();
            let len = rng.gen_range(1..64);
            let mut msg = vec![0u8; len];
            rng.fill(&mut msg[..]);
            let sig = kp.sign(&msg);
            assert!(verify(&msg, &sig, &kp.public_key()));
            let bit = rng.gen_range(0..len * 8);
            msg[bit / 8] ^= 1 << (bit % 8);
            assert!(!verify(&msg, &sig, &kp.public_key()));
        }
    }

    #[test]
    fn signature_serde_round_trip() {
        let kp = KeyPair::generate();
        let sig = kp.sign(b"payload");
        let json = serde_json::to_string(&sig).unwrap();
        let back: Signature = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sig);
        assert!(verify(b"payload", &back, &kp.public_key()));
    }
}
