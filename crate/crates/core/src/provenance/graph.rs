//! Ingredient provenance graphs.

use std::collections::{BTreeMap, BTreeSet};

use super::{Manifest, ProvenanceError};

/// Directed acyclic graph of manifest ids. An edge `A -> B` means A lists
/// B as an ingredient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceGraph {
    /// All manifest ids, sorted.
    pub nodes: Vec<String>,
    /// `(dependent, ingredient)` pairs, sorted, deduplicated.
    pub edges: Vec<(String, String)>,
    /// Ingredients-first order; ties broken by ascending manifest id.
    pub topological_order: Vec<String>,
    /// Ingredient references that point outside the given set.
    pub dangling: Vec<String>,
}

/// Build the provenance graph over a set of manifests.
///
/// Fails on duplicate manifest ids and on ingredient cycles; dangling
/// references are reported as warnings, not errors.
pub fn provenance_graph(manifests: &[Manifest]) -> Result<ProvenanceGraph, ProvenanceError> {
    let mut nodes = BTreeSet::new();
    for m in manifests {
        if !nodes.insert(m.manifest_id.clone()) {
            return Err(ProvenanceError::DuplicateManifestId(m.manifest_id.clone()));
        }
    }

    let mut edges = BTreeSet::new();
    let mut dangling = BTreeSet::new();
    for m in manifests {
        for ingredient in m.ingredients() {
            if nodes.contains(ingredient) {
                edges.insert((m.manifest_id.clone(), ingredient.to_string()));
            } else {
                dangling.insert(ingredient.to_string());
            }
        }
    }

    // Kahn's algorithm, emitting ingredients before their dependents.
    // A BTreeSet frontier makes tie-breaking by manifest id automatic.
    let mut blocking: BTreeMap<&str, usize> = nodes.iter().map(|n| (n.as_str(), 0)).collect();
    let mut dependents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (dependent, ingredient) in &edges {
        *blocking.get_mut(dependent.as_str()).expect("known node") += 1;
        dependents
            .entry(ingredient.as_str())
            .or_default()
            .push(dependent.as_str());
    }

    let mut frontier: BTreeSet<&str> = blocking
        .iter()
        .filter(|(_, &count)| count == 0)
        .map(|(&node, _)| node)
        .collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(&next) = frontier.iter().next() {
        frontier.remove(next);
        order.push(next.to_string());
        for &dependent in dependents.get(next).map(Vec::as_slice).unwrap_or(&[]) {
            let count = blocking.get_mut(dependent).expect("known node");
            *count -= 1;
            if *count == 0 {
                frontier.insert(dependent);
            }
        }
    }

    if order.len() < nodes.len() {
        let stuck = blocking
            .iter()
            .filter(|(_, &count)| count > 0)
            .map(|(&node, _)| node)
            .min()
            .expect("some node is blocked");
        return Err(ProvenanceError::CycleDetected(stuck.to_string()));
    }

    Ok(ProvenanceGraph {
        nodes: nodes.into_iter().collect(),
        edges: edges.into_iter().collect(),
        topological_order: order,
        dangling: dangling.into_iter().collect(),
    })
}
