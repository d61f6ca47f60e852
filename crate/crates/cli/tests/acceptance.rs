//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::Command;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eulerfam::analysis::{
    audit_lovasz, max_component_pairsum, max_component_pairsum_brute, min_edges_bound, AuditConfig,
};
use eulerfam::covering::{solve_small_cases, tour_intersecting, SmallCase};
use eulerfam::tooling::{default_corpus, gen_cover, gen_named, run_corpus, CorpusReport};
use eulerfam::trails::{verify_family, ClosedTrail, EulerFamily};
use eulerfam::{brute_force_selection, solve_even_two_factor, EdgeId, Hypergraph};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn families_on_corpus(report: &CorpusReport, secs: f64) -> Outcome {
    let eligible: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.m >= 2 && r.covering == Some(true) && r.l.is_some())
        .collect();
    let ok = |s: &Option<eulerfam::tooling::SolveSummary>| s.as_ref().is_some_and(|s| s.found && s.verified);
    let bad: Vec<_> = eligible
        .iter()
        .filter(|r| !(ok(&r.direct) && ok(&r.reduce)))
        .map(|r| r.key.as_str())
        .collect();
    outcome(
        eligible.len() >= 200 && bad.is_empty() && secs < 300.0,
        format!(
            "{}/{} instances solved and verified by both strategies in {secs:.1}s; failures {bad:?}",
            eligible.len() - bad.len(),
            eligible.len()
        ),
    )
}

fn small_shapes() -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 2..=5usize {
        let shapes: Vec<Vec<usize>> = (2..=n.min(4)).flat_map(|s| (0..n).combinations(s)).collect();
        for m in 1..=4 {
            for edges in shapes.iter().cloned().combinations_with_replacement(m) {
                out.push(Hypergraph::new(n, edges).unwrap());
            }
        }
    }
    out
}

fn random_small(rng: &mut ChaCha8Rng) -> Hypergraph {
    let n = rng.gen_range(3..=8);
    let m = rng.gen_range(1..=6);
    let edges: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=4.min(n));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(size);
            vs
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let shapes = small_shapes();
    let exhaustive = shapes.len();
    let all = shapes.into_iter().chain((0..500).map(|_| random_small(&mut rng)));
    let (mut checked, mut feasible) = (0usize, 0usize);
    let mut disagreements = Vec::new();
    for h in all {
        let fast = solve_even_two_factor(&h).unwrap();
        let slow = brute_force_selection(&h).unwrap();
        if let Some(sel) = &fast {
            if sel.validate(&h).is_err() {
                disagreements.push(h.to_json());
            }
            feasible += 1;
        }
        if fast.is_some() != slow.is_some() {
            disagreements.push(h.to_json());
        }
        checked += 1;
    }
    outcome(
        disagreements.is_empty(),
        format!(
            "{checked} instances ({exhaustive} exhaustive + 500 seeded), {feasible} feasible, {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn uses_every_edge_once(h: &Hypergraph, t: &ClosedTrail) -> bool {
    let mut edges = t.edges().to_vec();
    edges.sort();
    edges == h.edge_ids().collect::<Vec<EdgeId>>()
        && verify_family(h, &EulerFamily::new(vec![t.clone()])).is_ok()
}

/// Random `k`-sets of `0..n` meeting pairwise in two points, some pair in three.
fn random_intersecting(rng: &mut ChaCha8Rng) -> Hypergraph {
    loop {
        let k = rng.gen_range(4..=6);
        let n = rng.gen_range(k + 1..=2 * k - 2);
        let m = rng.gen_range(2..=6);
        let edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut vs: Vec<usize> = (0..n).collect();
                vs.shuffle(rng);
                vs.truncate(k);
                vs
            })
            .collect();
        let h = Hypergraph::new(n, edges).unwrap();
        let e = h.edges();
        let sizes: Vec<usize> = (0..m)
            .tuple_combinations()
            .map(|(i, j)| e[i].intersection_size(&e[j]))
            .collect();
        if sizes.iter().all(|&s| s >= 2) && sizes.iter().any(|&s| s >= 3) {
            return h;
        }
    }
}

fn constructions() -> Outcome {
    let mut covers = vec![gen_named("design_4_6").unwrap()];
    for (n, k) in [(5, 4), (6, 5), (7, 5)] {
        covers.push(gen_cover(n, k, 2, None).unwrap());
        for seed in 1..=6 {
            covers.push(gen_cover(n, k, 2, Some(seed)).unwrap());
        }
    }
    let mut failures = Vec::new();
    let mut small = 0;
    for h in &covers {
        match solve_small_cases(h) {
            Ok(SmallCase::Tour(t)) if uses_every_edge_once(h, &t) => small += 1,
            other => failures.push(format!("{}: {other:?}", h.to_json())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut intersecting = 0;
    while covers.len() + intersecting < 100 {
        let h = random_intersecting(&mut rng);
        match tour_intersecting(&h) {
            Ok(t) if uses_every_edge_once(&h, &t) => intersecting += 1,
            other => {
                failures.push(format!("{}: {other:?}", h.to_json()));
                intersecting += 1;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} instances: {small} small-case covers (design_4_6 included), {intersecting} intersecting; failures {failures:?}",
            covers.len() + intersecting
        ),
    )
}

fn pairsum_sweep() -> Outcome {
    let mut triples = 0;
    let mut bad = Vec::new();
    for n in 1..=20 {
        for q in 1..=4 {
            for k in 1..=5 {
                if n < q * k {
                    continue;
                }
                triples += 1;
                let closed = max_component_pairsum(n, k, q).unwrap();
                let brute = max_component_pairsum_brute(n, k, q).unwrap();
                let shape = closed.parts.iter().sum::<usize>() == n && closed.parts.iter().all(|&x| x >= k);
                if closed.value != brute.value || !shape {
                    bad.push((n, k, q));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{triples} triples, mismatches {bad:?}"))
}

/// Every 2-covering instance with `k >= 4` and `m >= 2` from the corpus plus
/// extra seeded covers.
fn two_covering_sample(report: &CorpusReport) -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> = report
        .rows
        .iter()
        .filter(|r| r.covering == Some(true) && r.k.is_some_and(|k| k >= 4) && r.m >= 2)
        .map(|r| (r.key.clone(), r.spec.generate().unwrap()))
        .collect();
    for k in 4..=6 {
        for n in k + 1..=12 {
            for seed in 10..20 {
                let h = gen_cover(n, k, 2, Some(seed)).unwrap();
                if h.size() >= 2 {
                    out.push((format!("random_cover/n{n:02}/k{k}/l2/s{seed}"), h));
                }
            }
        }
    }
    out
}

fn edge_bound(sample: &[(String, Hypergraph)]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (key, h) in sample {
        let k = h.uniformity().unwrap();
        let bound = min_edges_bound(h.order(), k);
        if bound.applicable {
            checked += 1;
            if h.size() < bound.value {
                bad.push(key.clone());
            }
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} instances checked, violations {bad:?}"))
}

fn no_cut_edges(sample: &[(String, Hypergraph)]) -> Outcome {
    let bad: Vec<_> = sample
        .iter()
        .filter(|(_, h)| !h.cut_edges().is_empty())
        .map(|(k, _)| k.clone())
        .collect();
    outcome(bad.is_empty(), format!("{} instances checked, with cut edges {bad:?}", sample.len()))
}

fn lovasz_audit(report: &CorpusReport) -> Outcome {
    let audited: Vec<_> = report
        .rows
        .iter()
        .filter_map(|r| r.audit.as_ref().map(|a| (r, a)))
        .filter(|(_, a)| a.hypotheses)
        .collect();
    let bad: Vec<_> = audited
        .iter()
        .filter(|(_, a)| a.min_gamma < 0)
        .map(|(r, _)| r.key.as_str())
        .collect();
    let single = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
    let rep = audit_lovasz(&single, AuditConfig::default()).unwrap();
    let witness = rep.min.s.is_empty() && rep.min.t == [3];
    outcome(
        !audited.is_empty() && bad.is_empty() && rep.min.value == -2 && witness,
        format!(
            "{} instances under the hypotheses, negative {bad:?}; single edge min {} with S={:?} T={:?}",
            audited.len(),
            rep.min.value,
            rep.min.s,
            rep.min.t
        ),
    )
}

fn run_bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_eulerfam"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let (code, text) = run_bin(&["gen", "--kind", "random_cover", "--n", "9", "--k", "4", "--l", "3", "--seed", "11"]);
    if code != Some(0) {
        return outcome(false, "gen failed");
    }
    std::fs::write(&path, &text).unwrap();
    let file = path.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "--kind", "random_cover", "--n", "9", "--k", "4", "--l", "3", "--seed", "11"],
        vec!["gen", "--kind", "greedy_cover", "--n", "10", "--k", "5", "--l", "2", "--format", "text"],
        vec!["solve", file, "--strategy", "direct"],
        vec!["solve", file, "--strategy", "reduce", "--l", "3", "--format", "json"],
        vec!["corpus", "default"],
    ];
    let mut differing = Vec::new();
    for args in &runs {
        let a = run_bin(args);
        let b = run_bin(args);
        if a != b || a.0 != Some(0) {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} commands run twice, differing or failing {differing:?}", runs.len()),
    )
}

fn main() {
    let start = Instant::now();
    let report = run_corpus(&default_corpus());
    let corpus_secs = start.elapsed().as_secs_f64();
    let sample = two_covering_sample(&report);

    let results = [
        ("1 families on the default corpus", families_on_corpus(&report, corpus_secs)),
        ("2 matching solver equals brute force", oracle_equivalence()),
        ("3 direct tour constructions", constructions()),
        ("4 pair-sum maximizer", pairsum_sweep()),
        ("5 edge-count lower bound", edge_bound(&sample)),
        ("6 no cut edges", no_cut_edges(&sample)),
        ("7 Lovász audit", lovasz_audit(&report)),
        ("8 deterministic outputs", determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!(
        "{}/{} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
