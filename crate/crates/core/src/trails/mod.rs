//! Closed trails, Euler families, their verification, and extraction of a
//! family from a [`FactorSelection`].

mod format;
mod tour;

pub use format::{parse_family, FamilyFormatError};
pub use tour::{euler_tour_exact, TourOutcome, DEFAULT_TOUR_BUDGET};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{FactorSelection, SelectionError};
use crate::hypercore::{EdgeId, Hypergraph, IncidenceGraph, VertexId};

/// A closed trail `v0 e1 v1 ... et vt` with `vt = v0`.
///
/// `anchors` holds all `t + 1` anchors including the repeated endpoint.
/// Nothing is checked at construction; see [`verify_family`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosedTrail {
    anchors: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl ClosedTrail {
    pub fn new(anchors: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        Self { anchors, edges }
    }

    pub fn anchors(&self) -> &[VertexId] {
        &self.anchors
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges `t`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive anchor pairs, one per traversed edge.
    pub fn steps(&self) -> impl Iterator<Item = (VertexId, EdgeId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (self.anchors[i], e, self.anchors[i + 1]))
    }

    /// Smallest `(anchor, edge)` sequence over all rotations and both
    /// directions. Only meaningful for well-formed closed trails.
    pub fn canonical(&self) -> ClosedTrail {
        let t = self.edges.len();
        if t == 0 || self.anchors.len() != t + 1 {
            return self.clone();
        }
        let forward: Vec<(VertexId, EdgeId)> =
            (0..t).map(|i| (self.anchors[i], self.edges[i])).collect();
        // v0 e_t v_{t-1} e_{t-1} ... e_1 v0
        let backward: Vec<(VertexId, EdgeId)> = (0..t)
            .map(|j| (self.anchors[(t - j) % t], self.edges[t - 1 - j]))
            .collect();
        let best = [forward, backward]
            .into_iter()
            .flat_map(|seq| {
                (0..t)
                    .map(|r| (0..t).map(|j| seq[(r + j) % t]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("t > 0");
        let mut anchors: Vec<VertexId> = best.iter().map(|&(v, _)| v).collect();
        anchors.push(best[0].0);
        ClosedTrail {
            anchors,
            edges: best.iter().map(|&(_, e)| e).collect(),
        }
    }

    /// Renders `v0 (e1) v1 ... v0` with the hypergraph's labels.
    pub fn display<'a>(&'a self, h: &'a Hypergraph) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a ClosedTrail, &'a Hypergraph);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (trail, h) = (self.0, self.1);
                for (i, &v) in trail.anchors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ({}) ", trail.edges[i - 1].0)?;
                    }
                    if v < h.order() {
                        write!(f, "{}", h.label(v))?;
                    } else {
                        write!(f, "?{v}")?;
                    }
                }
                Ok(())
            }
        }
        Show(self, h)
    }
}

/// A set of closed trails meant to be pairwise anchor- and edge-disjoint and
/// to traverse every edge exactly once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerFamily {
    trails: Vec<ClosedTrail>,
}

impl EulerFamily {
    pub fn new(trails: Vec<ClosedTrail>) -> Self {
        Self { trails }
    }

    pub fn trails(&self) -> &[ClosedTrail] {
        &self.trails
    }

    pub fn into_trails(self) -> Vec<ClosedTrail> {
        self.trails
    }

    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }

    /// Every trail in canonical form, trails sorted.
    pub fn canonical(&self) -> EulerFamily {
        let mut trails: Vec<ClosedTrail> = self.trails.iter().map(ClosedTrail::canonical).collect();
        trails.sort();
        EulerFamily { trails }
    }

    /// The selection induced by consecutive anchor pairs.
    pub fn selection(&self) -> FactorSelection {
        let mut sel = FactorSelection::new();
        for trail in &self.trails {
            for (a, e, b) in trail.steps() {
                sel.insert(e, a, b);
            }
        }
        sel
    }

    /// One trail per line, `v0 (e1) v1 ... v0`.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        self.trails
            .iter()
            .map(|t| format!("{}\n", t.display(h)))
            .collect()
    }

    /// `{"trails":[{"anchors":[...],"edges":[...]}]}` with vertex ids.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// The first violated clause of the Euler-family definition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("trail {trail}: {anchors} anchors for {edges} edges")]
    Malformed {
        trail: usize,
        anchors: usize,
        edges: usize,
    },
    #[error("trail {trail}: a closed trail needs at least two edges")]
    TooShort { trail: usize },
    #[error("trail {trail}: not closed (starts at {first}, ends at {last})")]
    NotClosed {
        trail: usize,
        first: VertexId,
        last: VertexId,
    },
    #[error("trail {trail}: unknown edge {edge}")]
    UnknownEdge { trail: usize, edge: EdgeId },
    #[error("trail {trail}: unknown vertex {vertex}")]
    UnknownVertex { trail: usize, vertex: VertexId },
    #[error("trail {trail}, step {step}: anchor {vertex} is not in edge {edge}")]
    AnchorNotInEdge {
        trail: usize,
        step: usize,
        vertex: VertexId,
        edge: EdgeId,
    },
    #[error("trail {trail}, step {step}: consecutive anchors are both {vertex}")]
    StationaryStep {
        trail: usize,
        step: usize,
        vertex: VertexId,
    },
    #[error("trail {trail}: edge {edge} traversed twice")]
    RepeatedEdge { trail: usize, edge: EdgeId },
    #[error("edge-disjointness: edge {edge} appears in trails {first} and {second}")]
    SharedEdge {
        edge: EdgeId,
        first: usize,
        second: usize,
    },
    #[error("anchor-disjointness: vertex {vertex} is an anchor of trails {first} and {second}")]
    SharedAnchor {
        vertex: VertexId,
        first: usize,
        second: usize,
    },
    #[error("edges not covered: {missing:?}")]
    EdgesNotCovered { missing: Vec<EdgeId> },
}

/// Accepts iff `family` is an Euler family of `h`.
pub fn verify_family(h: &Hypergraph, family: &EulerFamily) -> Result<(), Rejection> {
    for (ti, trail) in family.trails.iter().enumerate() {
        verify_trail(h, ti, trail)?;
    }
    let mut edge_owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (ti, trail) in family.trails.iter().enumerate() {
        for &e in &trail.edges {
            if let Some(&first) = edge_owner.get(&e) {
                return Err(Rejection::SharedEdge {
                    edge: e,
                    first,
                    second: ti,
                });
            }
            edge_owner.insert(e, ti);
        }
    }
    let mut anchor_owner: Vec<Option<usize>> = vec![None; h.order()];
    for (ti, trail) in family.trails.iter().enumerate() {
        for &v in &trail.anchors {
            match anchor_owner[v] {
                Some(first) if first != ti => {
                    return Err(Rejection::SharedAnchor {
                        vertex: v,
                        first,
                        second: ti,
                    })
                }
                _ => anchor_owner[v] = Some(ti),
            }
        }
    }
    let missing: Vec<EdgeId> = h.edge_ids().filter(|e| !edge_owner.contains_key(e)).collect();
    if !missing.is_empty() {
        return Err(Rejection::EdgesNotCovered { missing });
    }
    Ok(())
}

fn verify_trail(h: &Hypergraph, ti: usize, trail: &ClosedTrail) -> Result<(), Rejection> {
    let t = trail.edges.len();
    if trail.anchors.len() != t + 1 {
        return Err(Rejection::Malformed {
            trail: ti,
            anchors: trail.anchors.len(),
            edges: t,
        });
    }
    if t < 2 {
        return Err(Rejection::TooShort { trail: ti });
    }
    let (first, last) = (trail.anchors[0], trail.anchors[t]);
    if first != last {
        return Err(Rejection::NotClosed {
            trail: ti,
            first,
            last,
        });
    }
    if let Some(&v) = trail.anchors.iter().find(|&&v| v >= h.order()) {
        return Err(Rejection::UnknownVertex { trail: ti, vertex: v });
    }
    let mut seen = Vec::with_capacity(t);
    for (step, (a, e, b)) in trail.steps().enumerate() {
        let edge = h
            .edge(e)
            .ok_or(Rejection::UnknownEdge { trail: ti, edge: e })?;
        for v in [a, b] {
            if !edge.contains(v) {
                return Err(Rejection::AnchorNotInEdge {
                    trail: ti,
                    step,
                    vertex: v,
                    edge: e,
                });
            }
        }
        if a == b {
            return Err(Rejection::StationaryStep {
                trail: ti,
                step,
                vertex: a,
            });
        }
        if seen.contains(&e) {
            return Err(Rejection::RepeatedEdge { trail: ti, edge: e });
        }
        seen.push(e);
    }
    Ok(())
}

/// Decomposes the selected subgraph into closed trails, one per non-trivial
/// component, returned in canonical form.
///
/// Each component is traversed by Hierholzer's algorithm from its smallest
/// vertex, always taking the lowest-numbered unused incidence.
pub fn extract_family(
    g: &IncidenceGraph,
    h: &Hypergraph,
    sel: &FactorSelection,
) -> Result<EulerFamily, SelectionError> {
    sel.validate(h)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    // Link 2p joins edge p to its smaller chosen vertex, link 2p + 1 to the larger.
    let mut ends = Vec::with_capacity(2 * m);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for p in 0..m {
        let [a, b] = sel.get(g.edge_id(p)).expect("validated");
        for (slot, v) in [(0, a), (1, b)] {
            let link = 2 * p + slot;
            ends.push((v, n + p));
            adj[v].push(link);
            adj[n + p].push(link);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut used = vec![false; ends.len()];
    let mut cursor = vec![0usize; n + m];
    let mut trails = Vec::new();
    for start in 0..n {
        if adj[start].iter().all(|&l| used[l]) {
            continue;
        }
        let mut stack = vec![start];
        let mut circuit = Vec::new();
        while let Some(&u) = stack.last() {
            while cursor[u] < adj[u].len() && used[adj[u][cursor[u]]] {
                cursor[u] += 1;
            }
            if cursor[u] < adj[u].len() {
                let link = adj[u][cursor[u]];
                used[link] = true;
                let (v, e) = ends[link];
                stack.push(if u == v { e } else { v });
            } else {
                circuit.push(stack.pop().expect("non-empty"));
            }
        }
        circuit.reverse();
        let anchors = circuit.iter().step_by(2).copied().collect();
        let edges = circuit
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&node| g.edge_id(node - n))
            .collect();
        trails.push(ClosedTrail::new(anchors, edges));
    }
    Ok(EulerFamily::new(trails).canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn h(n: usize, edges: Vec<Vec<usize>>) -> Hypergraph {
        Hypergraph::new(n, edges).unwrap()
    }

    fn sel(pairs: &[(usize, usize)]) -> FactorSelection {
        let mut s = FactorSelection::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            s.insert(EdgeId(i), a, b);
        }
        s
    }

    fn trail(anchors: &[usize], edges: &[usize]) -> ClosedTrail {
        ClosedTrail::new(anchors.to_vec(), edges.iter().map(|&e| EdgeId(e)).collect())
    }

    fn extract(hg: &Hypergraph, s: &FactorSelection) -> EulerFamily {
        extract_family(&hg.incidence_graph(), hg, s).unwrap()
    }

    #[test]
    fn two_triples() {
        let hg = h(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let fam = extract(&hg, &sel(&[(0, 1), (0, 1)]));
        assert_eq!(fam.trails(), &[trail(&[0, 1, 0], &[0, 1])]);
        assert_eq!(fam.to_text(&hg), "0 (0) 1 (1) 0\n");
    }

    #[test]
    fn triangle() {
        let hg = h(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let fam = extract(&hg, &sel(&[(0, 1), (1, 2), (0, 2)]));
        assert_eq!(fam.trails(), &[trail(&[0, 1, 2, 0], &[0, 1, 2])]);
    }

    #[test]
    fn two_components_two_trails() {
        let hg = h(4, vec![vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3]]);
        let fam = extract(&hg, &sel(&[(0, 1), (0, 1), (2, 3), (2, 3)]));
        assert_eq!(
            fam.trails(),
            &[trail(&[0, 1, 0], &[0, 1]), trail(&[2, 3, 2], &[2, 3])]
        );
        assert_eq!(verify_family(&hg, &fam), Ok(()));
    }

    #[test]
    fn internal_anchor_repetition_is_allowed() {
        // Two triangles through vertex 0: a figure eight.
        let hg = h(
            5,
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]],
        );
        let fam = extract(&hg, &sel(&[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]));
        assert_eq!(fam.len(), 1);
        assert_eq!(verify_family(&hg, &fam), Ok(()));
        assert_eq!(fam.trails()[0].anchors().iter().filter(|&&v| v == 0).count(), 3);
    }

    #[test]
    fn design_4_6_tour() {
        let hg = h(6, vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]]);
        let fam = EulerFamily::new(vec![trail(&[2, 1, 4, 2], &[0, 1, 2])]);
        assert_eq!(verify_family(&hg, &fam), Ok(()));
    }

    #[test]
    fn rejections() {
        let hg = h(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 3]]);
        let missing = EulerFamily::new(vec![trail(&[0, 1, 0], &[0, 1])]);
        let err = verify_family(&hg, &missing).unwrap_err();
        assert_eq!(err, Rejection::EdgesNotCovered { missing: vec![EdgeId(2)] });
        assert!(err.to_string().starts_with("edges not covered"));

        let hg = h(5, vec![vec![0, 1], vec![0, 1], vec![1, 2], vec![1, 2]]);
        let shared = EulerFamily::new(vec![trail(&[0, 1, 0], &[0, 1]), trail(&[1, 2, 1], &[2, 3])]);
        let err = verify_family(&hg, &shared).unwrap_err();
        assert!(matches!(err, Rejection::SharedAnchor { vertex: 1, .. }));
        assert!(err.to_string().starts_with("anchor-disjointness"));

        let single = EulerFamily::new(vec![trail(&[0, 1], &[0])]);
        assert!(matches!(verify_family(&hg, &single), Err(Rejection::TooShort { .. })));
        let open = EulerFamily::new(vec![trail(&[0, 1, 2], &[0, 2])]);
        assert!(matches!(verify_family(&hg, &open), Err(Rejection::NotClosed { .. })));
        let outside = EulerFamily::new(vec![trail(&[0, 2, 0], &[0, 1])]);
        assert!(matches!(
            verify_family(&hg, &outside),
            Err(Rejection::AnchorNotInEdge { vertex: 2, .. })
        ));
        let twice = EulerFamily::new(vec![trail(&[0, 1, 0], &[0, 0])]);
        assert!(matches!(verify_family(&hg, &twice), Err(Rejection::RepeatedEdge { .. })));
        let two_uses = EulerFamily::new(vec![trail(&[0, 1, 0], &[0, 1]), trail(&[0, 1, 0], &[1, 0])]);
        assert!(matches!(verify_family(&hg, &two_uses), Err(Rejection::SharedEdge { .. })));
    }

    #[test]
    fn canonical_rotation_and_direction() {
        let t = trail(&[2, 0, 1, 2], &[5, 3, 4]);
        assert_eq!(t.canonical(), trail(&[0, 1, 2, 0], &[3, 4, 5]));
        let reversed = trail(&[2, 1, 0, 2], &[4, 3, 5]);
        assert_eq!(reversed.canonical(), t.canonical());
        assert_eq!(t.canonical().canonical(), t.canonical());
    }

    #[test]
    fn k43_extraction_verifies() {
        let hg = h(4, (0..4).combinations(3).collect());
        let s = crate::factor::solve_even_two_factor(&hg).unwrap().unwrap();
        let fam = extract(&hg, &s);
        assert_eq!(verify_family(&hg, &fam), Ok(()));
        assert_eq!(fam.selection(), s);
    }
}
