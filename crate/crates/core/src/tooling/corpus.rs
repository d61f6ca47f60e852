//! Runs the full pipeline over a list of generated instances.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GeneratorSpec, ToolingError};
use crate::analysis::{
    audit_lovasz, check_hypotheses, min_edges_bound, AuditConfig, AuditMode, AUDIT_LIMIT, RNG_NAME,
};
use crate::covering::{reduce_once, solve_l_covering, Strategy};
use crate::hypercore::{CoveringGuard, Hypergraph};
use crate::trails::{euler_tour_exact, verify_family, TourOutcome, DEFAULT_TOUR_BUDGET};

/// Tours are only searched on instances with at most this many edges.
pub const TOUR_MAX_EDGES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Checks {
    pub structural: bool,
    pub solve: bool,
    pub audit: bool,
    pub tour: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Self {
            structural: true,
            solve: true,
            audit: true,
            tour: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub instances: Vec<GeneratorSpec>,
    #[serde(default)]
    pub checks: Checks,
}

impl CorpusSpec {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Greedy and two seeded covers for every `2 <= l < k <= 6`, `k < n <= 12`,
/// complete hypergraphs up to order 8, and the named instances.
pub fn default_corpus() -> CorpusSpec {
    let mut instances = Vec::new();
    for k in 3..=6 {
        for l in 2..k {
            for n in k + 1..=12 {
                instances.push(GeneratorSpec::GreedyCover { n, k, l });
                for seed in 1..=2 {
                    instances.push(GeneratorSpec::RandomCover { n, k, l, seed });
                }
            }
        }
    }
    for n in 4..=8 {
        for k in 3..n.min(7) {
            instances.push(GeneratorSpec::Complete { n, k });
        }
    }
    instances.push(GeneratorSpec::Complete { n: 3, k: 3 });
    for name in ["design_4_6", "fano_like"] {
        instances.push(GeneratorSpec::Named { name: name.into() });
    }
    CorpusSpec {
        instances,
        checks: Checks::default(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveSummary {
    pub found: bool,
    pub verified: bool,
    pub trails: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    /// No cut edges and the X-condition confirmed for every edge set.
    pub hypotheses: bool,
    pub loops: u64,
    pub min_gamma: i64,
    /// Same audit with no loops at all.
    pub min_gamma_r0: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub key: String,
    pub spec: GeneratorSpec,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub covering: Option<bool>,
    pub components: usize,
    pub cut_edges: usize,
    /// 2-covering with `k >= 4` and `m >= 2`: no cut edges were found.
    pub no_cut_edge_check: Option<bool>,
    /// 2-covering with `k >= 4`, `2n > 3k` and `m >= 2`: `m` meets the bound.
    pub edge_bound_check: Option<bool>,
    pub direct: Option<SolveSummary>,
    pub reduce: Option<SolveSummary>,
    /// After `l - 2` deletions the instance is 2-covering.
    pub reduced_covering: Option<bool>,
    pub audit: Option<AuditSummary>,
    pub tour_found: Option<bool>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub instances: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    /// Instances with `m >= 2` solved and verified by both strategies.
    pub families_verified: usize,
    pub infeasible: usize,
    pub disagreements: usize,
    pub audited: usize,
    pub negative_audits: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub rng: &'static str,
    pub rows: Vec<CorpusRow>,
    pub aggregate: Aggregate,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn summarize(h: &Hypergraph, l: usize, strategy: Strategy) -> SolveSummary {
    match solve_l_covering(h, l, strategy) {
        Ok(sol) => match sol.family {
            Some(f) => SolveSummary {
                found: true,
                verified: verify_family(h, &f).is_ok(),
                trails: f.len(),
                error: None,
            },
            None => SolveSummary {
                found: false,
                verified: false,
                trails: 0,
                error: None,
            },
        },
        Err(e) => SolveSummary {
            found: false,
            verified: false,
            trails: 0,
            error: Some(e.to_string()),
        },
    }
}

fn run_row(spec: &GeneratorSpec, checks: Checks) -> CorpusRow {
    let key = spec.key();
    let h = match spec.generate() {
        Ok(h) => h,
        Err(e) => return error_row(key, spec, e),
    };
    let (n, m) = (h.order(), h.size());
    let k = h.uniformity();
    let l = spec.covering().filter(|&l| l < n);
    let mut row = CorpusRow {
        key,
        spec: spec.clone(),
        n,
        m,
        k,
        l,
        covering: None,
        components: h.component_count(),
        cut_edges: 0,
        no_cut_edge_check: None,
        edge_bound_check: None,
        direct: None,
        reduce: None,
        reduced_covering: None,
        audit: None,
        tour_found: None,
        pass: true,
        error: None,
    };

    if checks.structural {
        row.cut_edges = h.cut_edges().len();
        row.covering = l.and_then(|l| h.uncovered_subset(l, CoveringGuard::default()).ok().map(|w| w.is_none()));
        // l-covering with l >= 2 implies 2-covering
        if let (Some(k), Some(true)) = (k, row.covering) {
            if k >= 4 && m >= 2 {
                row.no_cut_edge_check = Some(row.cut_edges == 0);
                let bound = min_edges_bound(n, k);
                if bound.applicable {
                    row.edge_bound_check = Some(m >= bound.value);
                }
            }
        }
    }

    if checks.solve {
        if let Some(l) = l {
            let direct = summarize(&h, l, Strategy::Direct);
            let reduce = summarize(&h, l, Strategy::Reduce);
            let mut cur = h.clone();
            let mut ok = true;
            for _ in 2..l {
                match reduce_once(&cur, 0) {
                    Ok((next, _)) => cur = next,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            row.reduced_covering = Some(ok && (cur.order() <= 2 || cur.is_l_covering(2).unwrap_or(false)));
            row.direct = Some(direct);
            row.reduce = Some(reduce);
        }
    }

    if checks.audit && k.is_some() && 3u64.checked_pow(m as u32).is_some_and(|t| t <= AUDIT_LIMIT) {
        let hypotheses = check_hypotheses(&h).map(|r| r.holds()).unwrap_or(false);
        let full = audit_lovasz(&h, AuditConfig::default());
        let bare = audit_lovasz(
            &h,
            AuditConfig {
                mode: AuditMode::ExhaustiveE,
                loops: Some(0),
                ..Default::default()
            },
        );
        if let (Ok(full), Ok(bare)) = (full, bare) {
            row.audit = Some(AuditSummary {
                hypotheses,
                loops: full.loops,
                min_gamma: full.min.value,
                min_gamma_r0: bare.min.value,
            });
        }
    }

    if checks.tour && m <= TOUR_MAX_EDGES {
        row.tour_found = match euler_tour_exact(&h, DEFAULT_TOUR_BUDGET) {
            TourOutcome::Found(_) => Some(true),
            TourOutcome::NoTour => Some(false),
            TourOutcome::BudgetExceeded => None,
        };
    }

    row.pass = row_passes(&row);
    row
}

fn error_row(key: String, spec: &GeneratorSpec, e: ToolingError) -> CorpusRow {
    CorpusRow {
        key,
        spec: spec.clone(),
        n: 0,
        m: 0,
        k: None,
        l: None,
        covering: None,
        components: 0,
        cut_edges: 0,
        no_cut_edge_check: None,
        edge_bound_check: None,
        direct: None,
        reduce: None,
        reduced_covering: None,
        audit: None,
        tour_found: None,
        pass: false,
        error: Some(e.to_string()),
    }
}

fn solved(s: &Option<SolveSummary>) -> bool {
    s.as_ref().is_some_and(|s| s.found && s.verified)
}

fn disagree(row: &CorpusRow) -> bool {
    match (&row.direct, &row.reduce) {
        (Some(d), Some(r)) => d.found != r.found || d.error.is_some() != r.error.is_some(),
        _ => false,
    }
}

fn row_passes(row: &CorpusRow) -> bool {
    if row.error.is_some() || row.covering == Some(false) {
        return false;
    }
    if row.no_cut_edge_check == Some(false) || row.edge_bound_check == Some(false) {
        return false;
    }
    if row.reduced_covering == Some(false) || disagree(row) {
        return false;
    }
    if let (Some(d), Some(r)) = (&row.direct, &row.reduce) {
        if d.error.is_some() || r.error.is_some() {
            return false;
        }
        if row.m >= 2 && !(solved(&row.direct) && solved(&row.reduce)) {
            return false;
        }
    }
    if let Some(a) = &row.audit {
        // Nonnegativity is only predicted under the hypotheses, and a found
        // family rules out a negative value regardless.
        let feasible = solved(&row.direct);
        if (a.hypotheses || feasible) && a.min_gamma < 0 {
            return false;
        }
    }
    true
}

/// Runs every instance (in parallel) and assembles rows sorted by key.
pub fn run_corpus(spec: &CorpusSpec) -> CorpusReport {
    let mut rows: Vec<CorpusRow> = spec.instances.par_iter().map(|s| run_row(s, spec.checks)).collect();
    rows.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.spec.cmp(&b.spec)));
    rows.dedup_by(|a, b| a.spec == b.spec);

    let mut agg = Aggregate {
        instances: rows.len(),
        ..Default::default()
    };
    for row in &rows {
        if row.pass {
            agg.passed += 1;
        } else {
            agg.failed.push(row.key.clone());
        }
        if row.m >= 2 && solved(&row.direct) && solved(&row.reduce) {
            agg.families_verified += 1;
        }
        if row.direct.as_ref().is_some_and(|d| !d.found && d.error.is_none()) {
            agg.infeasible += 1;
        }
        agg.disagreements += disagree(row) as usize;
        if let Some(a) = &row.audit {
            agg.audited += 1;
            if a.min_gamma < 0 {
                agg.negative_audits.push(row.key.clone());
            }
        }
    }
    agg.pass = agg.failed.is_empty() && agg.disagreements == 0;
    CorpusReport {
        rng: RNG_NAME,
        rows,
        aggregate: agg,
    }
}
