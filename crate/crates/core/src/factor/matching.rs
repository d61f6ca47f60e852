//! Maximum-cardinality matching in general graphs (Edmonds' blossom search).
//!
//! The search starts from a greedy matching and then runs one alternating-tree
//! search from every exposed node in ascending order. An exposed node whose
//! search fails stays exposed for the rest of the run, so each node is a root
//! at most once. Neighbour order is the adjacency-list order, which makes the
//! result a pure function of the graph.

use std::collections::VecDeque;

/// Undirected simple graph as adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn from_edges(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(nodes);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop {a}");
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }
}

/// A matching stored as a mate array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn mate(&self, node: usize) -> Option<usize> {
        self.mate[node]
    }

    /// Number of matched pairs.
    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    /// Matched pairs `(a, b)` with `a < b`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.filter(|&b| a < b).map(|b| (a, b)))
            .collect()
    }

    /// True iff every pair is a graph edge and mates are symmetric.
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        self.mate.len() == g.node_count()
            && self.mate.iter().enumerate().all(|(a, m)| match *m {
                None => true,
                Some(b) => self.mate[b] == Some(a) && g.has_edge(a, b),
            })
    }
}

struct Search<'g> {
    g: &'g SimpleGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g SimpleGraph) -> Self {
        let n = g.node_count();
        let mut mate = vec![None; n];
        for a in 0..n {
            if mate[a].is_none() {
                if let Some(&b) = g.adj[a].iter().find(|&&b| mate[b].is_none()) {
                    mate[a] = Some(b);
                    mate[b] = Some(a);
                }
            }
        }
        Self {
            g,
            mate,
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("matched tree node has a parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path to root passes matched nodes");
            b = self.parent[m].expect("matched tree node has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path node is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path node has a parent");
        }
    }

    /// Alternating-tree search from an exposed root; returns the exposed
    /// endpoint of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let to = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let outer = to == root
                    || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if outer {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path is linked");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(n) => v = n,
                None => break,
            }
        }
    }

    /// Runs the searches; with `stop_on_failure` gives up at the first root
    /// that cannot be augmented (the matching then cannot be perfect).
    fn run(mut self, stop_on_failure: bool) -> Option<Matching> {
        for root in 0..self.mate.len() {
            if self.mate[root].is_some() {
                continue;
            }
            match self.find_path(root) {
                Some(end) => self.augment(end),
                None if stop_on_failure => return None,
                None => {}
            }
        }
        Some(Matching { mate: self.mate })
    }
}

/// A maximum-cardinality matching of `g`.
pub fn max_matching(g: &SimpleGraph) -> Matching {
    Search::new(g).run(false).expect("full run always yields a matching")
}

/// A perfect matching of `g`, or `None` if there is none.
pub fn perfect_matching(g: &SimpleGraph) -> Option<Matching> {
    if g.node_count() % 2 == 1 {
        return None;
    }
    Search::new(g).run(true)
}
