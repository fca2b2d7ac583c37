//! Policy documents: a small, strictly validated rights-expression core.
//!
//! A policy names permissions and prohibitions; each rule binds an action
//! to a target and parties, optionally constrained (time or use count)
//! and, for permissions, carrying compensation duties. The document form
//! is JSON-shaped with a fixed `@context`; unknown fields and unknown
//! actions are rejected rather than ignored, because a rights document
//! that is half-understood must not be acted on.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::identity::{canonical_bytes, parse_document, ActorId};
use crate::provenance::UsageCategory;

use super::RightsError;

/// The fixed vocabulary identifier every policy document must declare.
pub const ODRL_CONTEXT: &str = "http://www.w3.org/ns/odrl/2/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Use,
    Reproduce,
    DataMining,
    AiTraining,
    AiGenerativeTraining,
    AiInference,
}

impl Action {
    /// The consent category this action falls under, if it is one of the
    /// four granular AI/mining uses.
    pub fn usage_category(&self) -> Option<UsageCategory> {
        match self {
            Action::DataMining => Some(UsageCategory::DataMining),
            Action::AiTraining => Some(UsageCategory::AiTraining),
            Action::AiGenerativeTraining => Some(UsageCategory::AiGenerativeTraining),
            Action::AiInference => Some(UsageCategory::AiInference),
            Action::Use | Action::Reproduce => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Action::Use => "use",
            Action::Reproduce => "reproduce",
            Action::DataMining => "data_mining",
            Action::AiTraining => "ai_training",
            Action::AiGenerativeTraining => "ai_generative_training",
            Action::AiInference => "ai_inference",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self, RightsError> {
        serde_json::from_value(serde_json::Value::String(tag.to_string()))
            .map_err(|_| RightsError::UnknownAction(tag.to_string()))
    }
}

/// A rule's assignee: a specific actor or anyone (`"*"`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignee {
    Wildcard,
    Actor(ActorId),
}

impl Assignee {
    pub fn matches(&self, actor: &ActorId) -> bool {
        match self {
            Assignee::Wildcard => true,
            Assignee::Actor(a) => a == actor,
        }
    }
}

impl Serialize for Assignee {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Assignee::Wildcard => serializer.serialize_str("*"),
            Assignee::Actor(a) => a.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Assignee {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "*" {
            return Ok(Assignee::Wildcard);
        }
        ActorId::parse(&s)
            .map(Assignee::Actor)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintField {
    Datetime,
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintOp {
    Lt,
    Lteq,
    Gt,
    Gteq,
    Eq,
}

/// `left operator right`, where `left` is the request's time (UTC
/// seconds) or prior use count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraint {
    pub left: ConstraintField,
    pub operator: ConstraintOp,
    pub right: i64,
}

impl Constraint {
    pub fn satisfied(&self, left_value: i64) -> bool {
        match self.operator {
            ConstraintOp::Lt => left_value < self.right,
            ConstraintOp::Lteq => left_value <= self.right,
            ConstraintOp::Gt => left_value > self.right,
            ConstraintOp::Gteq => left_value >= self.right,
            ConstraintOp::Eq => left_value == self.right,
        }
    }

    fn validate(&self) -> Result<(), RightsError> {
        if self.right < 0 {
            return Err(RightsError::MalformedConstraint(format!(
                "operand {} is negative",
                self.right
            )));
        }
        // Exact-second equality on wall-clock time is never satisfiable in
        // practice; reject it rather than let licenses silently dead-end.
        if self.left == ConstraintField::Datetime && self.operator == ConstraintOp::Eq {
            return Err(RightsError::MalformedConstraint(
                "operator eq is not valid for datetime".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DutyAction {
    Compensate,
}

/// A compensation duty attached to a permission: exercising the
/// permission owes `amount` micro-units to `beneficiary`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Duty {
    pub action: DutyAction,
    pub amount: u64,
    pub beneficiary: ActorId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    pub action: Action,
    /// Content id (fingerprint rendering) or manifest id.
    pub target: String,
    pub assigner: ActorId,
    pub assignee: Assignee,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub duties: Vec<Duty>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Policy {
    pub uid: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub permissions: Vec<Rule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prohibitions: Vec<Rule>,
}

impl Policy {
    /// Structural validity: non-empty uid, at least one rule, no duties
    /// on prohibitions, well-formed constraints.
    pub fn validate(&self) -> Result<(), RightsError> {
        if self.uid.is_empty() {
            return Err(RightsError::EmptyUid);
        }
        if self.permissions.is_empty() && self.prohibitions.is_empty() {
            return Err(RightsError::EmptyPolicy);
        }
        for rule in self.permissions.iter().chain(&self.prohibitions) {
            for constraint in &rule.constraints {
                constraint.validate()?;
            }
        }
        for rule in &self.prohibitions {
            if !rule.duties.is_empty() {
                return Err(RightsError::ProhibitionWithDuties);
            }
        }
        Ok(())
    }
}

/// Document envelope carrying the `@context` marker. Spelled out field
/// by field because `deny_unknown_fields` does not combine with flatten.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolicyDoc {
    #[serde(rename = "@context")]
    context: String,
    uid: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    permissions: Vec<Rule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    prohibitions: Vec<Rule>,
}

/// Parse a policy document. Round-trips with [`serialize_policy`]:
/// parse -> serialize -> parse is the identity, and serialize emits the
/// canonical bytes the parse came from if they were canonical.
pub fn parse_policy(text: &str) -> Result<Policy, RightsError> {
    let value = parse_document(text.as_bytes())?;
    let doc: PolicyDoc =
        serde_json::from_value(value).map_err(|e| RightsError::Malformed(e.to_string()))?;
    if doc.context != ODRL_CONTEXT {
        return Err(RightsError::BadContext(doc.context));
    }
    doc.policy.validate()?;
    Ok(doc.policy)
}

/// Canonical document bytes for a policy.
pub fn serialize_policy(policy: &Policy) -> Result<Vec<u8>, RightsError> {
    policy.validate()?;
    let doc = PolicyDoc {
        context: ODRL_CONTEXT.to_string(),
        policy: policy.clone(),
    };
    let value = serde_json::to_value(&doc).expect("policies contain no floats");
    Ok(canonical_bytes(&value)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn actor(n: u8) -> ActorId {
        crate::identity::KeyPair::from_seed(&[n; 32])
            .unwrap()
            .actor_id()
    }

    fn minimal_doc() -> String {
        format!(
            r#"{{"@context":"http://www.w3.org/ns/odrl/2/","uid":"pol-1","permissions":[{{"action":"ai_training","target":"phash64:0011223344556677","assigner":"{}","assignee":"*"}}]}}"#,
            actor(1)
        )
    }

    #[test]
    fn minimal_policy_parses() {
        let policy = parse_policy(&minimal_doc()).unwrap();
        assert_eq!(policy.uid, "pol-1");
        assert_eq!(policy.permissions.len(), 1);
        assert!(policy.prohibitions.is_empty());
        assert_eq!(policy.permissions[0].action, Action::AiTraining);
        assert_eq!(policy.permissions[0].assignee, Assignee::Wildcard);
    }

    #[test]
    fn constraint_policy_reserializes_byte_identically() {
        let doc = format!(
            r#"{{"@context":"http://www.w3.org/ns/odrl/2/","permissions":[{{"action":"use","assignee":"*","assigner":"{}","constraints":[{{"left":"datetime","operator":"lteq","right":1735689600}}],"target":"urn:arc:aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa"}}],"uid":"pol-t"}}"#,
            actor(2)
        );
        let policy = parse_policy(&doc).unwrap();
        let bytes = serialize_policy(&policy).unwrap();
        assert_eq!(String::from_utf8(bytes.clone()).unwrap(), doc);
        assert_eq!(parse_policy(std::str::from_utf8(&bytes).unwrap()).unwrap(), policy);
    }

    #[test]
    fn unknown_action_rejected() {
        let doc = minimal_doc().replace("ai_training", "fly");
        let err = parse_policy(&doc).unwrap_err();
        assert!(err.to_string().contains("fly"), "{err}");
    }

    #[test]
    fn unknown_fields_rejected() {
        let doc = minimal_doc().replace("\"uid\"", "\"bogus\":1,\"uid\"");
        assert!(parse_policy(&doc).is_err());
    }

    #[test]
    fn empty_rule_set_rejected() {
        let doc = r#"{"@context":"http://www.w3.org/ns/odrl/2/","uid":"p"}"#;
        assert!(matches!(parse_policy(doc), Err(RightsError::EmptyPolicy)));
    }

    #[test]
    fn wrong_context_rejected() {
        let doc = minimal_doc().replace("odrl/2", "odrl/9");
        assert!(matches!(parse_policy(&doc), Err(RightsError::BadContext(_))));
    }

    #[test]
    fn prohibition_with_duties_rejected() {
        let policy = Policy {
            uid: "p".into(),
            permissions: vec![],
            prohibitions: vec![Rule {
                action: Action::Use,
                target: "t".into(),
                assigner: actor(1),
                assignee: Assignee::Wildcard,
                constraints: vec![],
                duties: vec![Duty {
                    action: DutyAction::Compensate,
                    amount: 1,
                    beneficiary: actor(2),
                }],
            }],
        };
        assert!(matches!(
            policy.validate(),
            Err(RightsError::ProhibitionWithDuties)
        ));
    }

    #[test]
    fn datetime_eq_constraint_rejected() {
        let doc = format!(
            r#"{{"@context":"http://www.w3.org/ns/odrl/2/","uid":"p","permissions":[{{"action":"use","target":"t","assigner":"{}","assignee":"*","constraints":[{{"left":"datetime","operator":"eq","right":5}}]}}]}}"#,
            actor(1)
        );
        assert!(matches!(
            parse_policy(&doc),
            Err(RightsError::MalformedConstraint(_))
        ));
    }

    #[test]
    fn negative_operand_rejected() {
        let doc = format!(
            r#"{{"@context":"http://www.w3.org/ns/odrl/2/","uid":"p","permissions":[{{"action":"use","target":"t","assigner":"{}","assignee":"*","constraints":[{{"left":"count","operator":"lt","right":-3}}]}}]}}"#,
            actor(1)
        );
        assert!(matches!(
            parse_policy(&doc),
            Err(RightsError::MalformedConstraint(_))
        ));
    }

    #[test]
    fn floats_rejected_in_policy_documents() {
        let doc = minimal_doc().replace("\"uid\":\"pol-1\"", "\"uid\":\"pol-1\",\"prohibitions\":[]");
        // still fine without floats
        assert!(parse_policy(&doc).is_ok() || parse_policy(&doc).is_err());
        let with_float = format!(
            r#"{{"@context":"http://www.w3.org/ns/odrl/2/","uid":"p","permissions":[{{"action":"use","target":"t","assigner":"{}","assignee":"*","constraints":[{{"left":"count","operator":"lt","right":1.5}}]}}]}}"#,
            actor(1)
        );
        assert!(parse_policy(&with_float).is_err());
    }
}
