//! One vertex-deletion step of the covering reduction, and lifting a family
//! of the reduced hypergraph back to the original.
//!
//! Deleting `v` shrinks every edge by exactly one vertex: `v` itself when the
//! edge contains it, otherwise the edge's largest vertex. An `(l+1)`-covering
//! `(k+1)`-hypergraph becomes `l`-covering and `k`-uniform, and since every
//! reduced edge is a subset of its preimage, trails lift unchanged.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{EdgeId, Hypergraph, VertexId};
use crate::trails::{verify_family, ClosedTrail, EulerFamily, Rejection};

/// What one edge lost in a reduction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMap {
    pub edge: EdgeId,
    pub reduced_edge: EdgeId,
    /// Removed vertex, in the numbering of the hypergraph before the step.
    pub removed_vertex: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub deleted_vertex: VertexId,
    /// `vertex_map[u]` is the pre-step id of reduced vertex `u`.
    pub vertex_map: Vec<VertexId>,
    pub edges: Vec<EdgeMap>,
}

impl ReductionStep {
    fn original_edge(&self, reduced: EdgeId) -> Option<EdgeId> {
        self.edges
            .iter()
            .find(|m| m.reduced_edge == reduced)
            .map(|m| m.edge)
    }
}

/// Steps in the order they were applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("cannot delete the only vertex")]
    TrivialHypergraph,
    #[error("edge {0} has a single vertex and would become empty")]
    EdgeTooSmall(EdgeId),
}

/// Deletes `v`, shrinking each edge by `v` or, if absent, its largest vertex.
/// Edge ids are kept, so the edge map is the identity on ids.
pub fn reduce_once(h: &Hypergraph, v: VertexId) -> Result<(Hypergraph, ReductionStep), ReduceError> {
    if v >= h.order() {
        return Err(ReduceError::UnknownVertex(v));
    }
    if h.order() == 1 {
        return Err(ReduceError::TrivialHypergraph);
    }
    let shift = |u: VertexId| if u > v { u - 1 } else { u };
    let mut edges = Vec::with_capacity(h.size());
    let mut maps = Vec::with_capacity(h.size());
    for e in h.edges() {
        if e.len() < 2 {
            return Err(ReduceError::EdgeTooSmall(e.id()));
        }
        let removed = if e.contains(v) {
            v
        } else {
            *e.vertices().last().expect("non-empty")
        };
        let kept = e
            .vertices()
            .iter()
            .filter(|&&u| u != removed)
            .map(|&u| shift(u))
            .collect();
        edges.push(Hypergraph::make_edge(e.id(), kept));
        maps.push(EdgeMap {
            edge: e.id(),
            reduced_edge: e.id(),
            removed_vertex: removed,
        });
    }
    let labels = h.labels().map(|l| {
        let mut l = l.to_vec();
        l.remove(v);
        l
    });
    let vertex_map = (0..h.order()).filter(|&u| u != v).collect();
    let reduced = Hypergraph::from_parts(h.order() - 1, labels, edges);
    Ok((
        reduced,
        ReductionStep {
            deleted_vertex: v,
            vertex_map,
            edges: maps,
        },
    ))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("family does not verify against the reduced hypergraph: {0}")]
    InputRejected(Rejection),
    #[error("reduced edge {0} has no preimage in the step")]
    UnmappedEdge(EdgeId),
    #[error("lifted family does not verify against the original hypergraph: {0}")]
    LiftedRejected(Rejection),
}

/// Maps a verified family of `reduced` back through `step` and verifies the
/// result against `original`. Returned in canonical form.
pub fn lift_family(
    reduced: &Hypergraph,
    family: &EulerFamily,
    step: &ReductionStep,
    original: &Hypergraph,
) -> Result<EulerFamily, LiftError> {
    verify_family(reduced, family).map_err(LiftError::InputRejected)?;
    let mut trails = Vec::with_capacity(family.len());
    for trail in family.trails() {
        let anchors = trail.anchors().iter().map(|&u| step.vertex_map[u]).collect();
        let edges = trail
            .edges()
            .iter()
            .map(|&e| step.original_edge(e).ok_or(LiftError::UnmappedEdge(e)))
            .collect::<Result<_, _>>()?;
        trails.push(ClosedTrail::new(anchors, edges));
    }
    let lifted = EulerFamily::new(trails).canonical();
    verify_family(original, &lifted).map_err(LiftError::LiftedRejected)?;
    Ok(lifted)
}
