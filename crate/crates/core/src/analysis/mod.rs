//! Counting bounds and the Lovász-condition audit.

mod bounds;
mod gamma;

pub use bounds::{max_component_pairsum, max_component_pairsum_brute, min_edges_bound, EdgeBound, PairSum};
pub use gamma::{gamma, GammaReport, LoopedIncidenceGraph};

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypercore::{Dsu, EdgeId, Hypergraph};

/// Largest `3^m` the exhaustive edge-set audit will enumerate.
pub const AUDIT_LIMIT: u64 = 1_000_000;
pub const DEFAULT_SAMPLES: u64 = 10_000;
/// The X-condition is checked over all edge subsets up to this size.
pub const X_CONDITION_MAX_EDGES: usize = 16;
/// PRNG behind every seeded audit.
pub const RNG_NAME: &str = "ChaCha8";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("node {0} is in both S and T")]
    NotDisjoint(usize),
    #[error("node {0} is not in the incidence graph")]
    UnknownNode(usize),
    #[error("3^{m} edge-set assignments exceed the limit {limit}")]
    Guard { m: usize, limit: u64 },
    #[error("X must contain at least two edges, found {0}")]
    SmallX(usize),
    #[error("edge {0} appears more than once in X")]
    RepeatedEdge(EdgeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("no composition of {n} into {q} parts of size at least {k}")]
    Infeasible { n: usize, k: usize, q: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditMode {
    /// All `S, T ⊆ E`.
    #[default]
    ExhaustiveE,
    /// Edge sets as above, plus seeded samples meeting the v-nodes.
    SampledV,
}

impl FromStr for AuditMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive_E" | "exhaustive_e" | "exhaustive" => Ok(AuditMode::ExhaustiveE),
            "sampled_V" | "sampled_v" | "sampled" => Ok(AuditMode::SampledV),
            other => Err(format!("unknown audit mode {other:?} (expected exhaustive_E or sampled_V)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub mode: AuditMode,
    /// Loop multiplicity; `None` means `2(m + n)^2`.
    pub loops: Option<u64>,
    pub samples: u64,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            mode: AuditMode::ExhaustiveE,
            loops: None,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub mode: AuditMode,
    pub loops: u64,
    /// Whether every `S, T ⊆ E` was evaluated; otherwise they were sampled.
    pub edge_sets_exhaustive: bool,
    pub evaluated: u64,
    /// Minimum over the evaluated edge-only sets.
    pub edge_min: GammaReport,
    /// Minimum over the sampled sets meeting the v-nodes.
    pub vertex_min: Option<GammaReport>,
    /// Overall minimum; the first one found on ties.
    pub min: GammaReport,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub rng: Option<&'static str>,
}

impl AuditReport {
    /// True when a negative value was found, which rules out an even two-factor.
    pub fn certifies_infeasible(&self) -> bool {
        self.min.value < 0
    }
}

fn keep_min(best: &mut Option<GammaReport>, rep: GammaReport) {
    if best.as_ref().is_none_or(|b| rep.value < b.value) {
        *best = Some(rep);
    }
}

/// Minimizes `γ` over disjoint `S, T`.
///
/// `ExhaustiveE` enumerates every assignment of edges to `S`, `T` or
/// neither, and fails beyond [`AUDIT_LIMIT`]. `SampledV` does the same when
/// the limit allows (and samples edge sets otherwise), then draws
/// `samples` sets meeting the v-nodes from a [`RNG_NAME`] generator.
pub fn audit_lovasz(h: &Hypergraph, config: AuditConfig) -> Result<AuditReport, AnalysisError> {
    let (n, m) = (h.order(), h.size());
    let loops = config.loops.unwrap_or_else(|| LoopedIncidenceGraph::default_loops(h));
    let g = LoopedIncidenceGraph::new(h.incidence_graph(), loops);
    let total = 3u64.checked_pow(m as u32).filter(|&t| t <= AUDIT_LIMIT);
    if total.is_none() && config.mode == AuditMode::ExhaustiveE {
        return Err(AnalysisError::Guard { m, limit: AUDIT_LIMIT });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut role = vec![0u8; n + m];
    let mut evaluated = 0u64;

    let mut edge_min = None;
    match total {
        Some(total) => {
            for _ in 0..total {
                keep_min(&mut edge_min, gamma::evaluate(&g, &role));
                evaluated += 1;
                // base-3 increment over the e-nodes
                for r in &mut role[n..] {
                    *r = (*r + 1) % 3;
                    if *r != 0 {
                        break;
                    }
                }
            }
        }
        None => {
            for _ in 0..config.samples {
                for r in &mut role[n..] {
                    *r = rng.gen_range(0..3);
                }
                keep_min(&mut edge_min, gamma::evaluate(&g, &role));
                evaluated += 1;
            }
            role.fill(0);
        }
    }
    let edge_min = edge_min.expect("at least one evaluation");

    let mut vertex_min = None;
    if config.mode == AuditMode::SampledV {
        for _ in 0..config.samples {
            for r in role.iter_mut() {
                *r = rng.gen_range(0..3);
            }
            if role[..n].iter().all(|&r| r == 0) {
                let v = rng.gen_range(0..n);
                role[v] = rng.gen_range(1..3);
            }
            keep_min(&mut vertex_min, gamma::evaluate(&g, &role));
            evaluated += 1;
        }
    }

    let min = match &vertex_min {
        Some(v) if v.value < edge_min.value => v.clone(),
        _ => edge_min.clone(),
    };
    let sampled = config.mode == AuditMode::SampledV || total.is_none();
    Ok(AuditReport {
        mode: config.mode,
        loops,
        edge_sets_exhaustive: total.is_some(),
        evaluated,
        edge_min,
        vertex_min,
        min,
        samples: sampled.then_some(config.samples),
        seed: sampled.then_some(config.seed),
        rng: sampled.then_some(RNG_NAME),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XReport {
    pub size: usize,
    /// Components of the incidence graph after deleting the e-nodes of `X`.
    pub components: usize,
    /// `2⌊(c + 3)/k⌋`.
    pub bound: usize,
    pub holds: bool,
    /// `|X| <= 2(c + 3)/k - 1`, the inequality a violating `X` would satisfy.
    pub negation_bound_holds: bool,
}

fn components_without(h: &Hypergraph, removed: &[bool]) -> usize {
    let n = h.order();
    let mut dsu = Dsu::new(n + h.size());
    for (pos, e) in h.edges().iter().enumerate() {
        if !removed[pos] {
            for &v in e.vertices() {
                dsu.union(v, n + pos);
            }
        }
    }
    let removed_count = removed.iter().filter(|&&r| r).count();
    dsu.count() - removed_count
}

fn x_report(h: &Hypergraph, k: usize, removed: &[bool]) -> XReport {
    let size = removed.iter().filter(|&&r| r).count();
    let components = components_without(h, removed);
    let bound = 2 * ((components + 3) / k);
    XReport {
        size,
        components,
        bound,
        holds: size >= bound,
        negation_bound_holds: size * k + k <= 2 * (components + 3),
    }
}

/// Evaluates `|X| >= 2⌊(c(G* - X) + 3)/k⌋` for one edge set `X`.
pub fn check_x_condition(h: &Hypergraph, x: &[EdgeId]) -> Result<XReport, AnalysisError> {
    if x.len() < 2 {
        return Err(AnalysisError::SmallX(x.len()));
    }
    let k = h.uniformity().ok_or(AnalysisError::NotUniform)?;
    let mut removed = vec![false; h.size()];
    for &e in x {
        let pos = h.edge_index(e).ok_or(AnalysisError::UnknownEdge(e))?;
        if removed[pos] {
            return Err(AnalysisError::RepeatedEdge(e));
        }
        removed[pos] = true;
    }
    Ok(x_report(h, k, &removed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum XVerdict {
    /// Every `X` with `|X| >= 2` satisfies the condition.
    Holds { checked: u64 },
    Violated { witness: Vec<EdgeId>, report: XReport },
    /// Too many edges to enumerate every subset.
    Unchecked { m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub cut_edges: Vec<EdgeId>,
    pub x_condition: XVerdict,
}

impl HypothesisReport {
    /// No cut edges and an exhaustively confirmed X-condition.
    pub fn holds(&self) -> bool {
        self.cut_edges.is_empty() && matches!(self.x_condition, XVerdict::Holds { .. })
    }
}

/// Checks the two hypotheses of the sufficiency argument: no cut edges, and
/// the X-condition for every edge set of size at least 2 (exhaustive up to
/// [`X_CONDITION_MAX_EDGES`] edges).
pub fn check_hypotheses(h: &Hypergraph) -> Result<HypothesisReport, AnalysisError> {
    let k = h.uniformity().ok_or(AnalysisError::NotUniform)?;
    let m = h.size();
    let cut_edges = h.cut_edges();
    let x_condition = if m > X_CONDITION_MAX_EDGES {
        XVerdict::Unchecked { m }
    } else {
        let mut verdict = XVerdict::Holds { checked: 0 };
        let mut checked = 0u64;
        let mut removed = vec![false; m];
        for mask in 0u32..1 << m {
            if mask.count_ones() < 2 {
                continue;
            }
            for (pos, r) in removed.iter_mut().enumerate() {
                *r = mask >> pos & 1 == 1;
            }
            checked += 1;
            let report = x_report(h, k, &removed);
            if !report.holds {
                let witness = (0..m).filter(|&p| removed[p]).map(|p| h.edges()[p].id()).collect();
                verdict = XVerdict::Violated { witness, report };
                break;
            }
        }
        if let XVerdict::Holds { checked: c } = &mut verdict {
            *c = checked;
        }
        verdict
    };
    Ok(HypothesisReport { cut_edges, x_condition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn h(n: usize, edges: Vec<Vec<usize>>) -> Hypergraph {
        Hypergraph::new(n, edges).unwrap()
    }

    #[test]
    fn single_edge_audit() {
        let rep = audit_lovasz(&h(3, vec![vec![0, 1, 2]]), AuditConfig::default()).unwrap();
        assert_eq!(rep.evaluated, 3);
        assert_eq!(rep.min.value, -2);
        assert_eq!((rep.min.s.as_slice(), rep.min.t.as_slice()), (&[][..], &[3][..]));
        assert!(rep.certifies_infeasible());
        assert_eq!(rep.rng, None);
    }

    #[test]
    fn two_triples_audit_is_nonnegative() {
        let rep = audit_lovasz(&h(4, vec![vec![0, 1, 2], vec![0, 1, 3]]), AuditConfig::default()).unwrap();
        assert_eq!(rep.evaluated, 9);
        assert!(rep.min.value >= 0);
    }

    #[test]
    fn audit_guard() {
        let big = h(8, (0..8).combinations(3).take(13).collect());
        assert_eq!(
            audit_lovasz(&big, AuditConfig::default()),
            Err(AnalysisError::Guard { m: 13, limit: AUDIT_LIMIT })
        );
        let cfg = AuditConfig {
            mode: AuditMode::SampledV,
            samples: 50,
            seed: 7,
            ..Default::default()
        };
        let rep = audit_lovasz(&big, cfg).unwrap();
        assert!(!rep.edge_sets_exhaustive);
        assert_eq!(rep.evaluated, 100);
        assert_eq!(rep.rng, Some(RNG_NAME));
        assert_eq!(rep, audit_lovasz(&big, cfg).unwrap());
    }

    #[test]
    fn sampled_mode_meets_vertices() {
        let hg = h(4, (0..4).combinations(3).collect());
        let cfg = AuditConfig {
            mode: AuditMode::SampledV,
            samples: 200,
            ..Default::default()
        };
        let rep = audit_lovasz(&hg, cfg).unwrap();
        let v = rep.vertex_min.unwrap();
        assert!(v.s.iter().chain(&v.t).any(|&x| x < 4));
        assert_eq!(rep.evaluated, 81 + 200);
    }

    #[test]
    fn x_condition_examples() {
        let k43 = h(4, (0..4).combinations(3).collect());
        let all: Vec<_> = k43.edge_ids().collect();
        let rep = check_x_condition(&k43, &all).unwrap();
        assert_eq!((rep.components, rep.bound, rep.holds), (4, 4, true));

        let two = h(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let rep = check_x_condition(&two, &[EdgeId(0), EdgeId(1)]).unwrap();
        assert_eq!((rep.components, rep.bound, rep.holds), (4, 4, false));
        assert!(rep.negation_bound_holds);

        assert_eq!(check_x_condition(&two, &[EdgeId(0)]), Err(AnalysisError::SmallX(1)));
    }

    #[test]
    fn connected_remainder_holds() {
        let k54 = h(5, (0..5).combinations(4).collect());
        let rep = check_x_condition(&k54, &[EdgeId(0), EdgeId(1)]).unwrap();
        assert_eq!((rep.components, rep.bound, rep.holds), (1, 2, true));
    }

    #[test]
    fn hypotheses() {
        let k54 = h(5, (0..5).combinations(4).collect());
        let rep = check_hypotheses(&k54).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.x_condition, XVerdict::Holds { checked: 26 });

        let two = h(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let rep = check_hypotheses(&two).unwrap();
        assert!(!rep.holds());
        assert!(matches!(rep.x_condition, XVerdict::Violated { .. }));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("sampled_V".parse::<AuditMode>(), Ok(AuditMode::SampledV));
        assert!("full".parse::<AuditMode>().is_err());
    }
}
