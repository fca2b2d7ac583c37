//! Canonical document serialization.
//!
//! Every byte sequence that gets hashed or signed in this crate is produced
//! here, so two independent implementations must agree on it byte for byte.
//! The rules (see `docs/FORMATS.md` for the normative description):
//!
//! * documents contain only maps, lists, strings, integers, booleans, null
//! * map keys are sorted by Unicode code point (= UTF-8 byte order)
//! * no insignificant whitespace anywhere
//! * integers in shortest decimal form, `-` prefix for negatives
//! * strings escape only `"`, `\`, and control characters; control
//!   characters use `\b \t \n \f \r` where available, otherwise `\u00xx`
//!   with lowercase hex
//! * floating-point values are rejected outright
//!
//! Output is a valid JSON text, so any JSON parser can read canonical
//! documents; only the emitter is constrained.

use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    /// All protocol numbers are integers; floats do not canonicalize.
    #[error("floating-point value {0} cannot appear in a canonical document")]
    Float(String),
    #[error("document is not valid JSON: {0}")]
    Parse(String),
}

/// Serialize a document to its unique canonical byte sequence.
pub fn canonical_bytes(value: &Value) -> Result<Vec<u8>, CanonicalError> {
    let mut out = Vec::new();
    write_value(value, &mut out)?;
    Ok(out)
}

/// Canonical bytes as a `String` (the output is always valid UTF-8).
pub fn canonical_string(value: &Value) -> Result<String, CanonicalError> {
    canonical_bytes(value).map(|b| String::from_utf8(b).expect("canonical output is UTF-8"))
}

/// SHA-256 of the canonical bytes. This is the digest used for every
/// "cryptographic hash of a document" in the protocol.
pub fn canonical_digest(value: &Value) -> Result<[u8; 32], CanonicalError> {
    Ok(sha256(&canonical_bytes(value)?))
}

/// SHA-256, the single digest primitive used throughout the crate.
pub fn sha256(data: &[u8]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(data);
    hasher.finalize().into()
}

/// Parse a document, rejecting floats so that parse -> serialize always
/// round-trips. Accepts any JSON whitespace on input; only emission is
/// canonical.
pub fn parse_document(bytes: &[u8]) -> Result<Value, CanonicalError> {
    let value: Value =
        serde_json::from_slice(bytes).map_err(|e| CanonicalError::Parse(e.to_string()))?;
    reject_floats(&value)?;
    Ok(value)
}

fn reject_floats(value: &Value) -> Result<(), CanonicalError> {
    match value {
        Value::Number(n) if n.as_i64().is_none() && n.as_u64().is_none() => {
            Err(CanonicalError::Float(n.to_string()))
        }
        Value::Array(items) => items.iter().try_for_each(reject_floats),
        Value::Object(map) => map.values().try_for_each(reject_floats),
        _ => Ok(()),
    }
}

fn write_value(value: &Value, out: &mut Vec<u8>) -> Result<(), CanonicalError> {
    match value {
        Value::Null => out.extend_from_slice(b"null"),
        Value::Bool(true) => out.extend_from_slice(b"true"),
        Value::Bool(false) => out.extend_from_slice(b"false"),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.extend_from_slice(i.to_string().as_bytes());
            } else if let Some(u) = n.as_u64() {
                out.extend_from_slice(u.to_string().as_bytes());
            } else {
                return Err(CanonicalError::Float(n.to_string()));
            }
        }
        Value::String(s) => write_string(s, out),
        Value::Array(items) => {
            out.push(b'[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(b',');
                }
                write_value(item, out)?;
            }
            out.push(b']');
        }
        Value::Object(map) => {
            // serde_json's map is a BTreeMap, so iteration is already in
            // byte order of the UTF-8 keys, which equals code point order.
            out.push(b'{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(b',');
                }
                write_string(key, out);
                out.push(b':');
                write_value(item, out)?;
            }
            out.push(b'}');
        }
    }
    Ok(())
}

fn write_string(s: &str, out: &mut Vec<u8>) {
    out.push(b'"');
    for ch in s.chars() {
        match ch {
            '"' => out.extend_from_slice(b"\\\""),
            '\\' => out.extend_from_slice(b"\\\\"),
            '\u{08}' => out.extend_from_slice(b"\\b"),
            '\t' => out.extend_from_slice(b"\\t"),
            '\n' => out.extend_from_slice(b"\\n"),
            '\u{0c}' => out.extend_from_slice(b"\\f"),
            '\r' => out.extend_from_slice(b"\\r"),
            c if (c as u32) < 0x20 => {
                out.extend_from_slice(format!("\\u{:04x}", c as u32).as_bytes());
            }
            c => {
                let mut buf = [0u8; 4];
                out.extend_from_slice(c.encode_utf8(&mut buf).as_bytes());
            }
        }
    }
    out.push(b'"');
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_by_code_point() {
        let doc = json!({"b": 1, "a": 2});
        assert_eq!(canonical_bytes(&doc).unwrap(), b"{\"a\":2,\"b\":1}");
    }

    #[test]
    fn empty_object_is_two_bytes() {
        assert_eq!(canonical_bytes(&json!({})).unwrap(), b"{}");
    }

    #[test]
    fn nested_document_serializes_identically_twice() {
        let doc = json!({"outer": {"z": [1, 2, {"k": null}], "a": true}, "n": -7});
        assert_eq!(
            canonical_bytes(&doc).unwrap(),
            canonical_bytes(&doc).unwrap()
        );
    }

    #[test]
    fn floats_rejected() {
        let doc = json!({"x": 1.5});
        assert!(matches!(
            canonical_bytes(&doc),
            Err(CanonicalError::Float(_))
        ));
        assert!(matches!(
            parse_document(b"{\"x\":1.5}"),
            Err(CanonicalError::Float(_))
        ));
    }

    #[test]
    fn parse_serialize_round_trip_is_idempotent() {
        let noisy = b" {\n  \"b\" : 1 , \"a\" : [ \"x\", null, true ] } ";
        let once = canonical_bytes(&parse_document(noisy).unwrap()).unwrap();
        let twice = canonical_bytes(&parse_document(&once).unwrap()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, b"{\"a\":[\"x\",null,true],\"b\":1}");
    }

    #[test]
    fn control_characters_escaped() {
        let doc = json!({"s": "a\nb\u{01}c"});
        assert_eq!(
            canonical_string(&doc).unwrap(),
            "{\"s\":\"a\\nb\\u0001c\"}"
        );
    }

    #[test]
    fn integer_forms_are_shortest_decimal() {
        let doc = json!([0, -1, 42, 9223372036854775807i64, 18446744073709551615u64]);
        assert_eq!(
            canonical_string(&doc).unwrap(),
            "[0,-1,42,9223372036854775807,18446744073709551615]"
        );
    }
}
