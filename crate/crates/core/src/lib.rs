//! Core library for the `arc` toolkit: durable content identification,
//! signed provenance manifests, machine-readable rights, a federated
//! tamper-evident registry, and exact royalty settlement.
//!
//! The modules mirror the protocol layers:
//!
//! * [`identity`] — key pairs, actor ids, signatures, canonical bytes
//! * [`content_id`] — perceptual fingerprints, watermark, collision math
//! * [`provenance`] — manifests, claims, assertions, provenance graphs
//! * [`rights`] — policies, licenses, opt signals and their reconciliation
//! * [`registry`] — hash-chained ledgers, materialized views, federation
//! * [`compensation`] — accounts, settlement, attribution, payouts

pub mod compensation;
pub mod content_id;
pub mod identity;
pub mod provenance;
pub mod registry;
pub mod rights;

pub use identity::canonical;
