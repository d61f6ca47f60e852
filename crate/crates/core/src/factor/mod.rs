//! Spanning subgraphs of the incidence graph with degree 2 at every e-node
//! and even degree at every v-node.
//!
//! Such a subgraph is recorded as a [`FactorSelection`]: the two vertices each
//! edge keeps. It exists iff the hypergraph has an Euler family; existence is
//! decided by a perfect matching in the parity gadget of [`gadget`].

pub mod gadget;
pub mod matching;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{EdgeId, Hypergraph, VertexId};

pub use gadget::{build_gadget, GadgetGraph, GadgetNode, IncidenceLink};
pub use matching::{max_matching, perfect_matching, Matching, SimpleGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("edge {edge} has {size} vertices; every edge needs at least 2")]
    EdgeTooSmall { edge: EdgeId, size: usize },
    #[error("brute-force search space of {space} selections exceeds the guard of {limit}")]
    SearchGuard { space: u128, limit: u128 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SelectionError {
    #[error("no pair chosen for edge {0}")]
    MissingEdge(EdgeId),
    #[error("pair chosen for unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {edge}: chosen pair ({a}, {b}) is not two distinct vertices of the edge")]
    BadPair { edge: EdgeId, a: VertexId, b: VertexId },
    #[error("vertex {vertex} is chosen by {count} edges, an odd number")]
    OddVertex { vertex: VertexId, count: usize },
}

/// For every edge, the unordered pair of vertices it keeps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorSelection {
    choice: BTreeMap<EdgeId, [VertexId; 2]>,
}

impl FactorSelection {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the pair for an edge, normalized so the smaller vertex comes first.
    pub fn insert(&mut self, edge: EdgeId, a: VertexId, b: VertexId) {
        self.choice.insert(edge, [a.min(b), a.max(b)]);
    }

    pub fn get(&self, edge: EdgeId) -> Option<[VertexId; 2]> {
        self.choice.get(&edge).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.choice.iter().map(|(&e, &p)| (e, p))
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// Checks both selection invariants against `h`.
    pub fn validate(&self, h: &Hypergraph) -> Result<(), SelectionError> {
        if let Some(&e) = self.choice.keys().find(|&&e| h.edge(e).is_none()) {
            return Err(SelectionError::UnknownEdge(e));
        }
        let mut count = vec![0usize; h.order()];
        for edge in h.edges() {
            let [a, b] = self
                .get(edge.id())
                .ok_or(SelectionError::MissingEdge(edge.id()))?;
            if a == b || !edge.contains(a) || !edge.contains(b) {
                return Err(SelectionError::BadPair { edge: edge.id(), a, b });
            }
            count[a] += 1;
            count[b] += 1;
        }
        match count.iter().position(|c| c % 2 == 1) {
            Some(v) => Err(SelectionError::OddVertex {
                vertex: v,
                count: count[v],
            }),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Reads the selection off a perfect matching of the gadget.
pub fn selection_from_matching(
    h: &Hypergraph,
    gadget: &GadgetGraph,
    matching: &Matching,
) -> FactorSelection {
    let mut picked: Vec<Vec<VertexId>> = vec![Vec::new(); h.size()];
    for link in gadget.links() {
        if matching.mate(link.edge_node) == Some(link.vertex_node) {
            picked[link.edge].push(link.vertex);
        }
    }
    let mut sel = FactorSelection::new();
    for (pos, edge) in h.edges().iter().enumerate() {
        let pair = &picked[pos];
        assert_eq!(pair.len(), 2, "edge gadget releases exactly two externals");
        sel.insert(edge.id(), pair[0], pair[1]);
    }
    sel
}

/// Finds a selection through the gadget matching, or `None` when the
/// hypergraph has no Euler family.
pub fn solve_even_two_factor(h: &Hypergraph) -> Result<Option<FactorSelection>, FactorError> {
    let gadget = build_gadget(&h.incidence_graph())?;
    Ok(perfect_matching(gadget.graph()).map(|m| {
        let sel = selection_from_matching(h, &gadget, &m);
        debug_assert_eq!(sel.validate(h), Ok(()));
        sel
    }))
}

/// Upper bound on the brute-force search space.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Enumerates per-edge pair choices (first edge slowest, pairs lexicographic)
/// and returns the first selection with all vertex counts even.
pub fn brute_force_selection(h: &Hypergraph) -> Result<Option<FactorSelection>, FactorError> {
    let mut space: u128 = 1;
    for e in h.edges() {
        if e.len() < 2 {
            return Err(FactorError::EdgeTooSmall {
                edge: e.id(),
                size: e.len(),
            });
        }
        let pairs = (e.len() * (e.len() - 1) / 2) as u128;
        space = space.saturating_mul(pairs);
        if space > BRUTE_FORCE_LIMIT {
            return Err(FactorError::SearchGuard {
                space,
                limit: BRUTE_FORCE_LIMIT,
            });
        }
    }
    let options: Vec<Vec<(VertexId, VertexId)>> = h
        .edges()
        .iter()
        .map(|e| {
            let vs = e.vertices();
            let mut out = Vec::new();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    out.push((vs[i], vs[j]));
                }
            }
            out
        })
        .collect();

    let mut digits = vec![0usize; options.len()];
    loop {
        let mut count = vec![0u32; h.order()];
        for (opts, &d) in options.iter().zip(&digits) {
            let (a, b) = opts[d];
            count[a] += 1;
            count[b] += 1;
        }
        if count.iter().all(|c| c % 2 == 0) {
            let mut sel = FactorSelection::new();
            for ((edge, opts), &d) in h.edges().iter().zip(&options).zip(&digits) {
                sel.insert(edge.id(), opts[d].0, opts[d].1);
            }
            return Ok(Some(sel));
        }
        // odometer, last edge fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}
