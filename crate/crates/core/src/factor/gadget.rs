//! Parity gadget turning the even-degree two-factor problem into perfect matching.
//!
//! e-node of degree k: k externals joined completely to k - 2 cores, so in a
//! perfect matching exactly two externals leave the gadget.
//!
//! v-node of degree d: d externals forming a clique, plus one auxiliary node
//! adjacent to all of them when d is odd, so the number of externals leaving
//! the gadget is always even.
//!
//! Every incidence (v, e) becomes one edge between the v-external and the
//! e-external that represent it.

use crate::hypercore::{IncidenceGraph, VertexId};

use super::matching::SimpleGraph;
use super::FactorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetNode {
    EdgeExternal { edge: usize, vertex: VertexId },
    EdgeCore { edge: usize, index: usize },
    VertexExternal { vertex: VertexId, edge: usize },
    VertexAux { vertex: VertexId },
}

/// An incidence edge of the gadget, with the incidence pair it stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceLink {
    pub vertex_node: usize,
    pub edge_node: usize,
    pub vertex: VertexId,
    /// Edge position in the incidence graph.
    pub edge: usize,
}

#[derive(Clone, Debug)]
pub struct GadgetGraph {
    graph: SimpleGraph,
    nodes: Vec<GadgetNode>,
    links: Vec<IncidenceLink>,
}

impl GadgetGraph {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn nodes(&self) -> &[GadgetNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn links(&self) -> &[IncidenceLink] {
        &self.links
    }

    /// Expected node count: sum over edges of `2|e| - 2` plus sum over
    /// vertices of `deg(v) + [deg(v) odd]`.
    pub fn expected_node_count(g: &IncidenceGraph) -> usize {
        let e_side: usize = (0..g.edge_count())
            .map(|p| 2 * g.vertices_of(p).len() - 2)
            .sum();
        let v_side: usize = (0..g.vertex_count())
            .map(|v| {
                let d = g.edges_of(v).len();
                d + d % 2
            })
            .sum();
        e_side + v_side
    }
}

pub fn build_gadget(g: &IncidenceGraph) -> Result<GadgetGraph, FactorError> {
    if let Some(p) = (0..g.edge_count()).find(|&p| g.vertices_of(p).len() < 2) {
        return Err(FactorError::EdgeTooSmall {
            edge: g.edge_id(p),
            size: g.vertices_of(p).len(),
        });
    }

    let mut nodes = Vec::with_capacity(GadgetGraph::expected_node_count(g));
    // e_external[p][i] is the external node of edge p for its i-th vertex.
    let mut e_external: Vec<Vec<usize>> = Vec::with_capacity(g.edge_count());
    let mut e_cores: Vec<Vec<usize>> = Vec::with_capacity(g.edge_count());
    for p in 0..g.edge_count() {
        let vs = g.vertices_of(p);
        let ext: Vec<usize> = vs
            .iter()
            .map(|&v| {
                nodes.push(GadgetNode::EdgeExternal { edge: p, vertex: v });
                nodes.len() - 1
            })
            .collect();
        let cores: Vec<usize> = (0..vs.len() - 2)
            .map(|index| {
                nodes.push(GadgetNode::EdgeCore { edge: p, index });
                nodes.len() - 1
            })
            .collect();
        e_external.push(ext);
        e_cores.push(cores);
    }
    let mut v_external: Vec<Vec<usize>> = Vec::with_capacity(g.vertex_count());
    let mut v_aux: Vec<Option<usize>> = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let ext: Vec<usize> = g
            .edges_of(v)
            .iter()
            .map(|&p| {
                nodes.push(GadgetNode::VertexExternal { vertex: v, edge: p });
                nodes.len() - 1
            })
            .collect();
        let aux = (ext.len() % 2 == 1).then(|| {
            nodes.push(GadgetNode::VertexAux { vertex: v });
            nodes.len() - 1
        });
        v_external.push(ext);
        v_aux.push(aux);
    }

    let mut graph = SimpleGraph::new(nodes.len());
    for (externals, cores) in e_external.iter().zip(&e_cores) {
        for &x in externals {
            for &c in cores {
                graph.add_edge(x, c);
            }
        }
    }
    let mut links = Vec::with_capacity(g.incidence_count());
    for (p, externals) in e_external.iter().enumerate() {
        for (i, &v) in g.vertices_of(p).iter().enumerate() {
            let slot = g
                .edges_of(v)
                .binary_search(&p)
                .expect("incidence lists agree");
            let link = IncidenceLink {
                vertex_node: v_external[v][slot],
                edge_node: externals[i],
                vertex: v,
                edge: p,
            };
            graph.add_edge(link.edge_node, link.vertex_node);
            links.push(link);
        }
    }
    for v in 0..g.vertex_count() {
        let ext = &v_external[v];
        for i in 0..ext.len() {
            for j in i + 1..ext.len() {
                graph.add_edge(ext[i], ext[j]);
            }
        }
        if let Some(a) = v_aux[v] {
            for &x in ext {
                graph.add_edge(x, a);
            }
        }
    }

    debug_assert_eq!(nodes.len(), GadgetGraph::expected_node_count(g));
    Ok(GadgetGraph {
        graph,
        nodes,
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Hypergraph;
    use itertools::Itertools;

    fn gadget(n: usize, edges: Vec<Vec<usize>>) -> GadgetGraph {
        build_gadget(&Hypergraph::new(n, edges).unwrap().incidence_graph()).unwrap()
    }

    #[test]
    fn single_triple() {
        assert_eq!(gadget(3, vec![vec![0, 1, 2]]).node_count(), 10);
    }

    #[test]
    fn duplicated_pair() {
        let g = gadget(2, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.links().len(), 4);
        assert!(!g.nodes().iter().any(|n| matches!(n, GadgetNode::EdgeCore { .. })));
        assert!(!g.nodes().iter().any(|n| matches!(n, GadgetNode::VertexAux { .. })));
    }

    #[test]
    fn k43_node_count() {
        assert_eq!(gadget(4, (0..4).combinations(3).collect()).node_count(), 32);
    }

    #[test]
    fn isolated_vertex_has_empty_gadget() {
        let g = gadget(4, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(g.node_count(), 8);
    }

    #[test]
    fn rejects_singleton_edges() {
        let h = Hypergraph::new(2, [vec![0], vec![0, 1]]).unwrap();
        assert!(matches!(
            build_gadget(&h.incidence_graph()),
            Err(FactorError::EdgeTooSmall { size: 1, .. })
        ));
    }
}
