//! Hypergraph data model and structural predicates.
//!
//! A [`Hypergraph`] has a dense vertex set `0..n` and a multiset of edges.
//! Every edge carries a stable [`EdgeId`]; deleting edges never renumbers
//! the survivors, and duplicate vertex sets remain distinct edges.

mod incidence;
mod parse;

pub use incidence::{IncidenceGraph, NodeKind};
pub use parse::{parse, parse_json, parse_text, ParseError};

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Stable identifier of an edge instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// One edge instance: its id and its sorted, duplicate-free vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    id: EdgeId,
    vertices: Vec<VertexId>,
}

impl Edge {
    pub fn id(&self) -> EdgeId {
        self.id
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Number of vertices shared with `other`.
    pub fn intersection_size(&self, other: &Edge) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Shared vertices in ascending order.
    pub fn intersection(&self, other: &Edge) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: VertexId },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    RepeatedVertex { edge: usize, vertex: VertexId },
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertexId(VertexId),
    #[error("covering parameter l={l} must satisfy 2 <= l < n={n}")]
    CoveringParameter { l: usize, n: usize },
    #[error("covering check over C({n},{l}) subsets exceeds the guard of {limit}")]
    CoveringGuard { n: usize, l: usize, limit: u64 },
}

/// Exhaustive covering checks refuse instances above these sizes.
#[derive(Clone, Copy, Debug)]
pub struct CoveringGuard {
    pub max_order: usize,
    pub max_subsets: u64,
}

impl Default for CoveringGuard {
    fn default() -> Self {
        Self {
            max_order: 64,
            max_subsets: 10_000_000,
        }
    }
}

/// A finite hypergraph with a non-empty dense vertex set and an edge multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    order: usize,
    labels: Option<Vec<String>>,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Builds a hypergraph on `0..order`, assigning edge ids `0..m` in input order.
    ///
    /// Each edge is sorted; empty edges, out-of-range vertices and repeated
    /// vertices inside one edge are rejected.
    pub fn new<I, E>(order: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = VertexId>,
    {
        if order == 0 {
            return Err(HypergraphError::EmptyVertexSet);
        }
        let mut built = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut vertices: Vec<VertexId> = edge.into_iter().collect();
            if vertices.is_empty() {
                return Err(HypergraphError::EmptyEdge { edge: idx });
            }
            vertices.sort_unstable();
            for w in vertices.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::RepeatedVertex {
                        edge: idx,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&v) = vertices.last().filter(|&&v| v >= order) {
                return Err(HypergraphError::UnknownVertex { edge: idx, vertex: v });
            }
            built.push(Edge {
                id: EdgeId(idx),
                vertices,
            });
        }
        Ok(Self {
            order,
            labels: None,
            edges: built,
        })
    }

    /// Attaches presentation labels, one per vertex in id order.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, HypergraphError> {
        if labels.len() != self.order {
            return Err(HypergraphError::LabelCount(labels.len(), self.order));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of vertices `n`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges `m`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a vertex: its label, or its id.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    /// Position of an edge id in [`Hypergraph::edges`].
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order];
        for e in &self.edges {
            for &v in &e.vertices {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Common edge cardinality, if every edge has the same one.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    /// `H \ e`: the same vertex set without one edge; other ids are kept.
    pub fn without_edge(&self, id: EdgeId) -> Result<Self, HypergraphError> {
        let idx = self.edge_index(id).ok_or(HypergraphError::UnknownEdge(id))?;
        let mut out = self.clone();
        out.edges.remove(idx);
        Ok(out)
    }

    /// `H - v`: drops the vertex, shrinks every edge by it and discards edges
    /// that become empty. Surviving vertices are renumbered densely in order
    /// (labels follow them); surviving edges keep their ids.
    ///
    /// Returns `None` when `H` is trivial, since the vertex set would be empty.
    pub fn without_vertex(&self, v: VertexId) -> Result<Option<Self>, HypergraphError> {
        if v >= self.order {
            return Err(HypergraphError::UnknownVertexId(v));
        }
        if self.order == 1 {
            return Ok(None);
        }
        let shift = |u: VertexId| if u > v { u - 1 } else { u };
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let vertices: Vec<VertexId> = e
                    .vertices
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| shift(u))
                    .collect();
                (!vertices.is_empty()).then_some(Edge { id: e.id, vertices })
            })
            .collect();
        let labels = self.labels.as_ref().map(|labels| {
            let mut labels = labels.clone();
            labels.remove(v);
            labels
        });
        Ok(Some(Self {
            order: self.order - 1,
            labels,
            edges,
        }))
    }

    pub(crate) fn from_parts(order: usize, labels: Option<Vec<String>>, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].id < w[1].id));
        Self {
            order,
            labels,
            edges,
        }
    }

    pub(crate) fn make_edge(id: EdgeId, mut vertices: Vec<VertexId>) -> Edge {
        vertices.sort_unstable();
        Edge { id, vertices }
    }

    /// Walk-connectivity classes of the vertices, each sorted, ordered by
    /// smallest member. Isolated vertices are singleton classes.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut dsu = Dsu::new(self.order);
        for e in &self.edges {
            for w in e.vertices.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        dsu.classes()
    }

    /// `c(H)`.
    pub fn component_count(&self) -> usize {
        let mut dsu = Dsu::new(self.order);
        for e in &self.edges {
            for w in e.vertices.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        dsu.count()
    }

    /// True iff deleting the edge increases the number of components.
    pub fn is_cut_edge(&self, id: EdgeId) -> Result<bool, HypergraphError> {
        Ok(self.without_edge(id)?.component_count() > self.component_count())
    }

    /// True iff `c(H - v) > c(H)`.
    pub fn is_cut_vertex(&self, v: VertexId) -> Result<bool, HypergraphError> {
        let before = self.component_count();
        Ok(match self.without_vertex(v)? {
            Some(h) => h.component_count() > before,
            None => false,
        })
    }

    pub fn cut_edges(&self) -> Vec<EdgeId> {
        let base = self.component_count();
        self.edges
            .iter()
            .filter(|e| {
                self.without_edge(e.id)
                    .map(|h| h.component_count() > base)
                    .unwrap_or(false)
            })
            .map(|e| e.id)
            .collect()
    }

    /// First `l`-subset (lexicographic) that no edge contains, if any.
    pub fn uncovered_subset(
        &self,
        l: usize,
        guard: CoveringGuard,
    ) -> Result<Option<Vec<VertexId>>, HypergraphError> {
        let n = self.order;
        if l < 2 || l >= n {
            return Err(HypergraphError::CoveringParameter { l, n });
        }
        let subsets = binomial(n as u64, l as u64);
        if n > guard.max_order || subsets > guard.max_subsets {
            return Err(HypergraphError::CoveringGuard {
                n,
                l,
                limit: guard.max_subsets,
            });
        }
        let masks: Vec<u64> = self
            .edges
            .iter()
            .filter(|e| e.len() >= l)
            .map(|e| vertex_mask(&e.vertices))
            .collect();
        Ok((0..n).combinations(l).find(|subset| {
            let want = vertex_mask(subset);
            !masks.iter().any(|&m| m & want == want)
        }))
    }

    /// True iff every `l`-subset of the vertex set lies inside some edge.
    pub fn is_l_covering(&self, l: usize) -> Result<bool, HypergraphError> {
        Ok(self.uncovered_subset(l, CoveringGuard::default())?.is_none())
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        IncidenceGraph::new(self)
    }
}

/// Bitmask of a vertex list; callers guarantee ids below 64.
pub(crate) fn vertex_mask(vertices: &[VertexId]) -> u64 {
    vertices.iter().fold(0u64, |acc, &v| acc | (1u64 << v))
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}
