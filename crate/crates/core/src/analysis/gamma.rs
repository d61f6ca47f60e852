//! The Lovász deficiency functional on the looped incidence graph.
//!
//! `G*` is the incidence graph with `r` loops at every v-node. With the
//! degree profile `f(v) = r`, `f(e) = 2`, an `(f, f)`-factor of `G*` without
//! its loops is exactly the even two-factor we look for, and it exists iff
//!
//! ```text
//! γ(S,T) = Σ_S f + Σ_T (deg* - f) - ε(S,T) - q(S,T) >= 0
//! ```
//!
//! for all disjoint node sets `S`, `T`. Here `q(S,T)` counts components `C`
//! of `G* - (S ∪ T)` with `Σ_C f + ε(C,T)` odd.
//!
//! Loops are never materialized. They never join two distinct nodes, so
//! `ε`, the components, and the connectivity of `G* - X` are those of the
//! plain incidence graph; `r` only enters through `f(v) = r` and
//! `deg*(v) = deg(v) + 2r`.

use serde::Serialize;

use crate::hypercore::{Dsu, Hypergraph, IncidenceGraph, NodeKind};

use super::AnalysisError;

#[derive(Clone, Debug)]
pub struct LoopedIncidenceGraph {
    graph: IncidenceGraph,
    loops: u64,
}

impl LoopedIncidenceGraph {
    pub fn new(graph: IncidenceGraph, loops: u64) -> Self {
        Self { graph, loops }
    }

    /// Loop count `2(m + n)^2` used by the sufficiency argument.
    pub fn default_loops(h: &Hypergraph) -> u64 {
        let s = (h.order() + h.size()) as u64;
        2 * s * s
    }

    pub fn with_default_loops(h: &Hypergraph) -> Self {
        Self::new(h.incidence_graph(), Self::default_loops(h))
    }

    pub fn graph(&self) -> &IncidenceGraph {
        &self.graph
    }

    pub fn loops(&self) -> u64 {
        self.loops
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Target degree: `r` at v-nodes, 2 at e-nodes.
    pub fn f(&self, node: usize) -> i64 {
        match self.graph.kind(node) {
            NodeKind::Vertex(_) => self.loops as i64,
            NodeKind::Edge(_) => 2,
        }
    }

    pub fn degree(&self, node: usize) -> i64 {
        let base = self.graph.degree(node) as i64;
        match self.graph.kind(node) {
            NodeKind::Vertex(_) => base + 2 * self.loops as i64,
            NodeKind::Edge(_) => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub f_sum_s: i64,
    pub defect_sum_t: i64,
    pub epsilon: i64,
    /// Components with `Σ f + ε(C, T)` odd.
    pub q: i64,
    /// Components with `ε(C, T)` odd; equals `q` whenever `r` is even.
    pub q_edge_parity: i64,
    pub value: i64,
}

/// Evaluates `γ(S, T)`; `s` and `t` are node indices of the incidence graph.
pub fn gamma(g: &LoopedIncidenceGraph, s: &[usize], t: &[usize]) -> Result<GammaReport, AnalysisError> {
    let nodes = g.node_count();
    let mut role = vec![0u8; nodes]; // 0 remaining, 1 in S, 2 in T
    for (&x, tag) in s.iter().map(|x| (x, 1u8)).chain(t.iter().map(|x| (x, 2u8))) {
        if x >= nodes {
            return Err(AnalysisError::UnknownNode(x));
        }
        if role[x] != 0 {
            return Err(AnalysisError::NotDisjoint(x));
        }
        role[x] = tag;
    }
    Ok(evaluate(g, &role))
}

/// `role[x]` is 0 for remaining nodes, 1 for `S`, 2 for `T`.
pub(crate) fn evaluate(g: &LoopedIncidenceGraph, role: &[u8]) -> GammaReport {
    let nodes = g.node_count();
    let mut f_sum_s = 0i64;
    let mut defect_sum_t = 0i64;
    for (x, &r) in role.iter().enumerate() {
        match r {
            1 => f_sum_s += g.f(x),
            2 => defect_sum_t += g.degree(x) - g.f(x),
            _ => {}
        }
    }

    let mut epsilon = 0i64;
    let mut dsu = Dsu::new(nodes);
    // incidences from each remaining node into T
    let mut into_t = vec![0i64; nodes];
    for (v, e) in g.graph().incidences() {
        match (role[v], role[e]) {
            (1, 2) | (2, 1) => epsilon += 1,
            (0, 0) => dsu.union(v, e),
            (0, 2) => into_t[v] += 1,
            (2, 0) => into_t[e] += 1,
            _ => {}
        }
    }
    let mut f_par = vec![0i64; nodes];
    let mut eps_par = vec![0i64; nodes];
    for x in (0..nodes).filter(|&x| role[x] == 0) {
        let root = dsu.find(x);
        f_par[root] += g.f(x) + into_t[x];
        eps_par[root] += into_t[x];
    }
    let roots = (0..nodes).filter(|&x| role[x] == 0 && dsu.find(x) == x);
    let (mut q, mut q_edge_parity) = (0i64, 0i64);
    for root in roots {
        q += f_par[root] & 1;
        q_edge_parity += eps_par[root] & 1;
    }
    debug_assert!(g.loops() % 2 == 1 || q == q_edge_parity);

    GammaReport {
        s: (0..nodes).filter(|&x| role[x] == 1).collect(),
        t: (0..nodes).filter(|&x| role[x] == 2).collect(),
        f_sum_s,
        defect_sum_t,
        epsilon,
        q,
        q_edge_parity,
        value: f_sum_s + defect_sum_t - epsilon - q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn looped(n: usize, edges: Vec<Vec<usize>>) -> LoopedIncidenceGraph {
        LoopedIncidenceGraph::with_default_loops(&Hypergraph::new(n, edges).unwrap())
    }

    #[test]
    fn empty_sets_give_zero() {
        let g = looped(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let rep = gamma(&g, &[], &[]).unwrap();
        assert_eq!((rep.q, rep.value), (0, 0));
    }

    #[test]
    fn single_edge_in_t() {
        let g = looped(3, vec![vec![0, 1, 2]]);
        assert_eq!(g.loops(), 32);
        let rep = gamma(&g, &[], &[3]).unwrap();
        assert_eq!(rep.defect_sum_t, 1);
        assert_eq!(rep.q, 3);
        assert_eq!(rep.value, -2);
    }

    #[test]
    fn edge_in_s() {
        let g = looped(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let rep = gamma(&g, &[4], &[]).unwrap();
        assert_eq!((rep.f_sum_s, rep.q, rep.value), (2, 0, 2));
    }

    #[test]
    fn vertex_terms_use_loops() {
        let g = looped(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let r = g.loops() as i64;
        let rep = gamma(&g, &[0], &[1]).unwrap();
        assert_eq!(rep.f_sum_s, r);
        assert_eq!(rep.defect_sum_t, 2 + r);
        assert_eq!(
            rep.value,
            rep.f_sum_s + rep.defect_sum_t - rep.epsilon - rep.q
        );
    }

    #[test]
    fn odd_loops_change_general_parity_only() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let g = LoopedIncidenceGraph::new(h.incidence_graph(), 1);
        let rep = gamma(&g, &[], &[]).unwrap();
        // one component with 4 v-nodes and 2 e-nodes: Σf = 4 + 4, even
        assert_eq!(rep.q, 0);
        let rep = gamma(&g, &[4, 5], &[]).unwrap();
        // four isolated v-nodes, each Σf = 1
        assert_eq!((rep.q, rep.q_edge_parity), (4, 0));
    }

    #[test]
    fn rejects_overlap() {
        let g = looped(3, vec![vec![0, 1, 2]]);
        assert_eq!(gamma(&g, &[3], &[3]), Err(AnalysisError::NotDisjoint(3)));
        assert_eq!(gamma(&g, &[9], &[]), Err(AnalysisError::UnknownNode(9)));
    }
}
