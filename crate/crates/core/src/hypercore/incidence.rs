use super::{EdgeId, Hypergraph, VertexId};

/// Which side of the bipartition a node lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// v-node for a hypergraph vertex.
    Vertex(VertexId),
    /// e-node for the edge at this position (see [`IncidenceGraph::edge_id`]).
    Edge(usize),
}

/// Bipartite incidence graph of a hypergraph.
///
/// Nodes `0..n` are v-nodes in vertex order, nodes `n..n+m` are e-nodes in
/// edge-id order. Edge positions (not ids) index the e-side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    vertex_count: usize,
    edge_ids: Vec<EdgeId>,
    vertex_adj: Vec<Vec<usize>>,
    edge_adj: Vec<Vec<VertexId>>,
}

impl IncidenceGraph {
    pub fn new(h: &Hypergraph) -> Self {
        let mut vertex_adj = vec![Vec::new(); h.order()];
        let mut edge_adj = Vec::with_capacity(h.size());
        for (pos, e) in h.edges().iter().enumerate() {
            for &v in e.vertices() {
                vertex_adj[v].push(pos);
            }
            edge_adj.push(e.vertices().to_vec());
        }
        Self {
            vertex_count: h.order(),
            edge_ids: h.edge_ids().collect(),
            vertex_adj,
            edge_adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn node_count(&self) -> usize {
        self.vertex_count + self.edge_ids.len()
    }

    pub fn incidence_count(&self) -> usize {
        self.edge_adj.iter().map(Vec::len).sum()
    }

    pub fn edge_id(&self, pos: usize) -> EdgeId {
        self.edge_ids[pos]
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn edge_node(&self, pos: usize) -> usize {
        self.vertex_count + pos
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        if node < self.vertex_count {
            NodeKind::Vertex(node)
        } else {
            NodeKind::Edge(node - self.vertex_count)
        }
    }

    /// Edge positions incident with a vertex, ascending.
    pub fn edges_of(&self, v: VertexId) -> &[usize] {
        &self.vertex_adj[v]
    }

    /// Vertices of the edge at a position, ascending.
    pub fn vertices_of(&self, pos: usize) -> &[VertexId] {
        &self.edge_adj[pos]
    }

    pub fn degree(&self, node: usize) -> usize {
        match self.kind(node) {
            NodeKind::Vertex(v) => self.vertex_adj[v].len(),
            NodeKind::Edge(p) => self.edge_adj[p].len(),
        }
    }

    /// Neighbours of a node as node indices.
    pub fn neighbours(&self, node: usize) -> Vec<usize> {
        match self.kind(node) {
            NodeKind::Vertex(v) => self.vertex_adj[v].iter().map(|&p| self.edge_node(p)).collect(),
            NodeKind::Edge(p) => self.edge_adj[p].clone(),
        }
    }

    /// All incidences as `(v-node, e-node)` pairs, ordered by e-node.
    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edge_adj
            .iter()
            .enumerate()
            .flat_map(move |(p, vs)| vs.iter().map(move |&v| (v, self.vertex_count + p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn single_edge_is_a_star() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let g = h.incidence_graph();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.degree(3), 3);
        assert_eq!(g.neighbours(3), vec![0, 1, 2]);
        assert!((0..3).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn k43_is_biregular() {
        let h = Hypergraph::new(4, (0..4).combinations(3)).unwrap();
        let g = h.incidence_graph();
        assert_eq!(g.incidence_count(), 12);
        assert!((0..g.node_count()).all(|x| g.degree(x) == 3));
    }

    #[test]
    fn duplicate_edges_stay_distinct() {
        let h = Hypergraph::new(2, [vec![0, 1], vec![0, 1]]).unwrap();
        let g = h.incidence_graph();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbours(2), vec![0, 1]);
        assert_eq!(g.neighbours(3), vec![0, 1]);
        assert_eq!(g.neighbours(0), vec![2, 3]);
    }
}
