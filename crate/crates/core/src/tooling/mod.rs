//! Instance generators and the corpus harness.

mod corpus;

pub use corpus::{
    default_corpus, run_corpus, Aggregate, AuditSummary, Checks, CorpusReport, CorpusRow, CorpusSpec, SolveSummary,
};

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{binomial, vertex_mask, Hypergraph, VertexId};

/// Largest order the generators accept.
pub const MAX_GENERATOR_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToolingError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("unknown named instance {0:?} (known: design_4_6, fano_like)")]
    UnknownName(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Complete { n: usize, k: usize },
    GreedyCover { n: usize, k: usize, l: usize },
    RandomCover { n: usize, k: usize, l: usize, seed: u64 },
    Named { name: String },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Hypergraph, ToolingError> {
        match self {
            GeneratorSpec::Complete { n, k } => gen_complete(*n, *k),
            GeneratorSpec::GreedyCover { n, k, l } => gen_cover(*n, *k, *l, None),
            GeneratorSpec::RandomCover { n, k, l, seed } => gen_cover(*n, *k, *l, Some(*seed)),
            GeneratorSpec::Named { name } => gen_named(name),
        }
    }

    /// Covering parameter the instance is built to satisfy.
    pub fn covering(&self) -> Option<usize> {
        match self {
            GeneratorSpec::Complete { k, .. } => (*k >= 3).then(|| k - 1),
            GeneratorSpec::GreedyCover { l, .. } | GeneratorSpec::RandomCover { l, .. } => Some(*l),
            GeneratorSpec::Named { .. } => Some(2),
        }
    }

    /// Stable, human-readable key; corpus rows are sorted by it.
    pub fn key(&self) -> String {
        match self {
            GeneratorSpec::Complete { n, k } => format!("complete/n{n:02}/k{k}"),
            GeneratorSpec::GreedyCover { n, k, l } => format!("greedy_cover/n{n:02}/k{k}/l{l}"),
            GeneratorSpec::RandomCover { n, k, l, seed } => format!("random_cover/n{n:02}/k{k}/l{l}/s{seed}"),
            GeneratorSpec::Named { name } => format!("named/{name}"),
        }
    }
}

/// All `C(n, k)` `k`-subsets of `0..n`, in lexicographic order.
pub fn gen_complete(n: usize, k: usize) -> Result<Hypergraph, ToolingError> {
    if k < 1 || k > n {
        return Err(ToolingError::Parameters(format!("complete needs 1 <= k <= n, got n={n}, k={k}")));
    }
    if binomial(n as u64, k as u64) > 1_000_000 {
        return Err(ToolingError::Parameters(format!("C({n},{k}) edges is too many")));
    }
    Ok(Hypergraph::new(n, (0..n).combinations(k)).expect("valid subsets"))
}

/// Greedy `l`-covering `k`-hypergraph on `0..n`.
///
/// Uncovered `l`-subsets are visited in lexicographic order; each gets the
/// `k`-edge through it covering the most new `l`-subsets, ties going to the
/// lexicographically smallest edge. With a seed, both the visiting order and
/// the candidate order are shuffled by a [`ChaCha8Rng`] and ties go to the
/// first candidate in shuffled order.
pub fn gen_cover(n: usize, k: usize, l: usize, seed: Option<u64>) -> Result<Hypergraph, ToolingError> {
    if !(2 <= l && l < k && k <= n && n <= MAX_GENERATOR_ORDER) {
        return Err(ToolingError::Parameters(format!(
            "cover needs 2 <= l < k <= n <= {MAX_GENERATOR_ORDER}, got n={n}, k={k}, l={l}"
        )));
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut subsets: Vec<Vec<VertexId>> = (0..n).combinations(l).collect();
    if let Some(rng) = rng.as_mut() {
        subsets.shuffle(rng);
    }
    let mut covered: HashSet<u64> = HashSet::new();
    let mut edges: Vec<Vec<VertexId>> = Vec::new();
    for subset in &subsets {
        if covered.contains(&vertex_mask(subset)) {
            continue;
        }
        let rest: Vec<VertexId> = (0..n).filter(|v| !subset.contains(v)).collect();
        let mut candidates: Vec<Vec<VertexId>> = rest
            .iter()
            .copied()
            .combinations(k - l)
            .map(|extra| subset.iter().copied().chain(extra).sorted().collect())
            .collect();
        match rng.as_mut() {
            Some(rng) => candidates.shuffle(rng),
            None => candidates.sort(),
        }
        let gain = |edge: &Vec<VertexId>| {
            edge.iter()
                .copied()
                .combinations(l)
                .filter(|s| !covered.contains(&vertex_mask(s)))
                .count()
        };
        let mut best = 0;
        let mut best_gain = 0;
        for (i, c) in candidates.iter().enumerate() {
            let g = gain(c);
            if g > best_gain {
                best = i;
                best_gain = g;
            }
        }
        let edge = candidates.swap_remove(best);
        for s in edge.iter().copied().combinations(l) {
            covered.insert(vertex_mask(&s));
        }
        edges.push(edge);
    }
    let h = Hypergraph::new(n, edges).expect("valid subsets");
    debug_assert!(h.is_l_covering(l).unwrap_or(true));
    Ok(h)
}

/// Fixed named instances.
///
/// `design_4_6` is the three four-sets on six points meeting pairwise in two
/// points; `fano_like` is the Fano plane.
pub fn gen_named(name: &str) -> Result<Hypergraph, ToolingError> {
    let (n, edges): (usize, Vec<Vec<VertexId>>) = match name {
        "design_4_6" => (6, vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]]),
        "fano_like" => (
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        ),
        other => return Err(ToolingError::UnknownName(other.to_string())),
    };
    Ok(Hypergraph::new(n, edges).expect("valid named instance"))
}
