//! Exact Euler tour search by backtracking over per-edge pair choices.
//!
//! Deciding whether a uniform hypergraph has an Euler tour is NP-complete, so
//! the search is bounded by a node budget and reports when it gave up.

use crate::factor::FactorSelection;
use crate::hypercore::{Dsu, Hypergraph, VertexId};

use super::{extract_family, ClosedTrail};

pub const DEFAULT_TOUR_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TourOutcome {
    Found(ClosedTrail),
    /// The search space was exhausted without finding a tour.
    NoTour,
    /// The budget ran out; existence is unknown.
    BudgetExceeded,
}

/// Looks for a selection whose subgraph has exactly one non-trivial
/// component; its single trail is then an Euler tour.
pub fn euler_tour_exact(h: &Hypergraph, budget: u64) -> TourOutcome {
    if h.size() < 2 || h.edges().iter().any(|e| e.len() < 2) {
        return TourOutcome::NoTour;
    }
    let mut last_use = vec![None; h.order()];
    for (pos, e) in h.edges().iter().enumerate() {
        for &v in e.vertices() {
            last_use[v] = Some(pos);
        }
    }
    // closing[pos] = vertices whose parity is final once edge pos is chosen
    let mut closing: Vec<Vec<VertexId>> = vec![Vec::new(); h.size()];
    for (v, last) in last_use.iter().enumerate() {
        if let Some(pos) = last {
            closing[*pos].push(v);
        }
    }
    let options: Vec<Vec<(VertexId, VertexId)>> = h
        .edges()
        .iter()
        .map(|e| {
            let vs = e.vertices();
            (0..vs.len())
                .flat_map(|i| (i + 1..vs.len()).map(move |j| (vs[i], vs[j])))
                .collect()
        })
        .collect();

    let mut search = Search {
        h,
        options: &options,
        closing: &closing,
        count: vec![0; h.order()],
        chosen: Vec::with_capacity(h.size()),
        nodes: 0,
        budget,
    };
    match search.descend() {
        Step::Found => {
            let mut sel = FactorSelection::new();
            for (e, &(a, b)) in h.edges().iter().zip(&search.chosen) {
                sel.insert(e.id(), a, b);
            }
            let family = extract_family(&h.incidence_graph(), h, &sel).expect("parity checked");
            debug_assert_eq!(family.len(), 1);
            TourOutcome::Found(family.into_trails().remove(0))
        }
        Step::Exhausted => TourOutcome::NoTour,
        Step::OutOfBudget => TourOutcome::BudgetExceeded,
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    h: &'a Hypergraph,
    options: &'a [Vec<(VertexId, VertexId)>],
    closing: &'a [Vec<VertexId>],
    count: Vec<u32>,
    chosen: Vec<(VertexId, VertexId)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn descend(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let pos = self.chosen.len();
        if pos == self.options.len() {
            return if self.single_component() {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        for &(a, b) in &self.options[pos] {
            self.count[a] += 1;
            self.count[b] += 1;
            if self.closing[pos].iter().all(|&v| self.count[v].is_multiple_of(2)) {
                self.chosen.push((a, b));
                match self.descend() {
                    Step::Exhausted => {}
                    done => return done,
                }
                self.chosen.pop();
            }
            self.count[a] -= 1;
            self.count[b] -= 1;
        }
        Step::Exhausted
    }

    fn single_component(&self) -> bool {
        let mut dsu = Dsu::new(self.h.order());
        for &(a, b) in &self.chosen {
            dsu.union(a, b);
        }
        let mut roots: Vec<usize> = (0..self.h.order())
            .filter(|&v| self.count[v] > 0)
            .map(|v| dsu.find(v))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() == 1
    }
}
