use itertools::Itertools;
use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use proptest::prelude::*;

use eulerfam::analysis::{audit_lovasz, gamma, AuditConfig, LoopedIncidenceGraph};
use eulerfam::covering::{reduce_once, solve_l_covering, tour_intersecting, Strategy as Solver};
use eulerfam::factor::{build_gadget, max_matching, GadgetGraph, SimpleGraph};
use eulerfam::hypercore::{parse, Hypergraph};
use eulerfam::tooling::gen_cover;
use eulerfam::{brute_force_selection, extract_family, solve_even_two_factor, verify_family};

/// Hypergraphs on up to 7 vertices with up to 6 edges of size 2 to 4.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=7).prop_flat_map(|n| {
        let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n.min(4));
        proptest::collection::vec(edge, 1..=6).prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

fn simple_graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=14).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let len = pairs.len();
        proptest::sample::subsequence(pairs, 0..=len).prop_map(move |edges| SimpleGraph::from_edges(n, edges))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialization_round_trips(h in hypergraph()) {
        prop_assert_eq!(parse(&h.to_json()).unwrap(), h.clone());
        prop_assert_eq!(parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn incidence_degrees(h in hypergraph()) {
        let g = h.incidence_graph();
        let vertex_sum: usize = (0..h.order()).map(|v| g.degree(v)).sum();
        let edge_sum: usize = (0..h.size()).map(|p| g.degree(g.edge_node(p))).sum();
        prop_assert_eq!(g.node_count(), h.order() + h.size());
        prop_assert_eq!(vertex_sum, g.incidence_count());
        prop_assert_eq!(edge_sum, h.edges().iter().map(|e| e.len()).sum::<usize>());
        prop_assert_eq!(h.degrees().iter().sum::<usize>(), vertex_sum);
    }

    #[test]
    fn cut_edges_match_component_counts(h in hypergraph()) {
        let c = h.component_count();
        for e in h.edge_ids() {
            let without = h.without_edge(e).unwrap();
            prop_assert!(without.component_count() >= c);
            prop_assert_eq!(h.is_cut_edge(e).unwrap(), without.component_count() > c);
        }
    }

    #[test]
    fn gadget_has_expected_size(h in hypergraph()) {
        let g = h.incidence_graph();
        let gadget = build_gadget(&g).unwrap();
        prop_assert_eq!(gadget.node_count(), GadgetGraph::expected_node_count(&g));
    }

    #[test]
    fn matching_solver_agrees_with_brute_force(h in hypergraph()) {
        let fast = solve_even_two_factor(&h).unwrap();
        let slow = brute_force_selection(&h).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(sel) = fast {
            prop_assert_eq!(sel.validate(&h), Ok(()));
            let family = extract_family(&h.incidence_graph(), &h, &sel).unwrap();
            prop_assert_eq!(verify_family(&h, &family), Ok(()));
            prop_assert_eq!(family.selection(), sel);
        }
    }

    #[test]
    fn feasible_instances_have_nonnegative_audits(h in hypergraph()) {
        prop_assume!(h.size() <= 6);
        let rep = audit_lovasz(&h, AuditConfig::default()).unwrap();
        let r = &rep.min;
        prop_assert_eq!(r.value, r.f_sum_s + r.defect_sum_t - r.epsilon - r.q);
        if solve_even_two_factor(&h).unwrap().is_some() {
            prop_assert!(rep.min.value >= 0);
        }
        let g = LoopedIncidenceGraph::with_default_loops(&h);
        prop_assert_eq!(gamma(&g, &[], &[]).unwrap().value, 0);
    }

    #[test]
    fn blossom_matches_petgraph(g in simple_graph()) {
        let ours = max_matching(&g);
        prop_assert!(ours.is_valid_for(&g));
        let mut pg = UnGraph::<(), ()>::new_undirected();
        let nodes: Vec<_> = (0..g.node_count()).map(|_| pg.add_node(())).collect();
        for a in 0..g.node_count() {
            for &b in g.neighbours(a) {
                if a < b {
                    pg.add_edge(nodes[a], nodes[b], ());
                }
            }
        }
        prop_assert_eq!(ours.size(), maximum_matching(&pg).len());
    }

    #[test]
    fn intersecting_tours_verify(k in 4usize..=6, extra in 1usize..=3, picks in proptest::collection::vec(any::<u64>(), 2..=6)) {
        // on at most 2k - 3 points any two k-sets share at least three
        let n = (k + extra).min(2 * k - 3);
        let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let edges = picks.iter().map(|&p| subsets[(p % subsets.len() as u64) as usize].clone());
        let h = Hypergraph::new(n, edges).unwrap();
        let t = tour_intersecting(&h).unwrap();
        prop_assert_eq!(t.len(), h.size());
    }

    #[test]
    fn reduction_lowers_covering(n in 5usize..=9, k in 4usize..=5, seed in any::<u64>()) {
        prop_assume!(k < n);
        let h = gen_cover(n, k, 3, Some(seed)).unwrap();
        prop_assert!(h.is_l_covering(3).unwrap());
        let (r, step) = reduce_once(&h, 0).unwrap();
        prop_assert!(r.is_k_uniform(k - 1));
        prop_assert!(r.is_l_covering(2).unwrap());
        prop_assert_eq!(step.edges.len(), h.size());
    }

    #[test]
    fn strategies_agree(n in 5usize..=8, k in 4usize..=5, seed in any::<u64>()) {
        prop_assume!(k < n);
        let h = gen_cover(n, k, 3, Some(seed)).unwrap();
        let direct = solve_l_covering(&h, 3, Solver::Direct).unwrap().family;
        let reduce = solve_l_covering(&h, 3, Solver::Reduce).unwrap().family;
        prop_assert_eq!(direct.is_some(), reduce.is_some());
        for fam in direct.iter().chain(&reduce) {
            prop_assert_eq!(verify_family(&h, fam), Ok(()));
        }
    }
}
