mod common;

use earpack::connectivity::{cyclic_edge_connectivity, odd_cyclic_edge_connectivity, verify_value};
use earpack::constructions::{smallest_instance, verify_expectations, ConstructionOutput, Family, VerifyOptions};
use earpack::ears::{max_odd_ear_packing, validate_ear, verify_packing, SearchOptions};
use earpack::generators::random_regular;
use earpack::harness::{evaluate_hypotheses, lemma10_check, sample_tree_instance, Budget};
use earpack::matching::{eq1_sides, extend_matching, maximum_matching, verify_barrier, ExtensionResult};
use earpack::{parse_graph, serialize_graph, Format, Graph, Matching};
use petgraph::graph::UnGraph;
use proptest::prelude::*;

fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn regular_graph() -> impl Strategy<Value = Graph> {
    (3..=4usize, 3..=8usize, any::<u64>()).prop_filter_map("no such graph", |(r, half, seed)| {
        random_regular(2 * half, r, seed).ok()
    })
}

/// A matching built greedily from a shuffled edge order.
fn some_matching(g: &Graph, order: &[usize], size: usize) -> Matching {
    let edges: Vec<_> = g.edges().collect();
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::new();
    for &i in order {
        let (u, v) = edges[i % edges.len()];
        if chosen.len() < size && !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            chosen.push((u, v));
        }
    }
    Matching::new(g, chosen).unwrap()
}

fn petgraph_matching_size(g: &Graph) -> usize {
    let mut p = UnGraph::<(), ()>::with_capacity(g.n(), g.num_edges());
    for _ in 0..g.n() {
        p.add_node(());
    }
    for (u, v) in g.edges() {
        p.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    petgraph::algo::maximum_matching(&p).len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arbitrary_graph(70)) {
        let text = serialize_graph(&g, Format::Graph6);
        prop_assert_eq!(parse_graph(&text, Format::Graph6).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in arbitrary_graph(30)) {
        let text = serialize_graph(&g, Format::EdgeList);
        prop_assert_eq!(parse_graph(&text, Format::EdgeList).unwrap(), g);
    }

    #[test]
    fn blossom_matches_petgraph(g in arbitrary_graph(24)) {
        let m = maximum_matching(&g);
        prop_assert!(m.check_in(&g).is_ok());
        prop_assert_eq!(m.size(), petgraph_matching_size(&g));
    }

    #[test]
    fn extension_or_verified_barrier(g in regular_graph(), order in proptest::collection::vec(any::<usize>(), 1..12), size in 1..5usize) {
        let m = some_matching(&g, &order, size);
        let rest: Vec<usize> = (0..g.n()).filter(|&v| !m.covers(v)).collect();
        let (h, _) = g.induced_subgraph(&rest).unwrap();
        let extendable = 2 * petgraph_matching_size(&h) == h.n();
        match extend_matching(&g, &m).unwrap() {
            ExtensionResult::Extended { perfect_matching } => {
                prop_assert!(extendable);
                prop_assert!(perfect_matching.is_perfect_in(&g));
                for (u, v) in m.edges().iter() {
                    prop_assert!(perfect_matching.contains(u, v));
                }
            }
            ExtensionResult::Blocked { barrier } => {
                prop_assert!(!extendable);
                prop_assert!(verify_barrier(&g, &m, &barrier).is_ok());
                prop_assert!(barrier.deficiency() >= 2);
                let sides = eq1_sides(&g, &m, &barrier.s_set).unwrap();
                prop_assert_eq!(sides.lhs, sides.rhs);
            }
        }
    }

    #[test]
    fn tampered_barrier_rejected(g in regular_graph(), order in proptest::collection::vec(any::<usize>(), 1..12)) {
        let m = some_matching(&g, &order, 4);
        if let ExtensionResult::Blocked { mut barrier } = extend_matching(&g, &m).unwrap() {
            barrier.odd.pop();
            prop_assert!(verify_barrier(&g, &m, &barrier).is_err());
        }
    }

    #[test]
    fn identity_for_any_s(g in regular_graph(), order in proptest::collection::vec(any::<usize>(), 1..12), pick in any::<u64>()) {
        let m = some_matching(&g, &order, 3);
        let s: Vec<usize> = (0..g.n()).filter(|&v| !m.covers(v) && pick >> (v % 64) & 1 == 1).collect();
        let sides = eq1_sides(&g, &m, &s).unwrap();
        prop_assert_eq!(sides.lhs, sides.rhs);
    }

    #[test]
    fn cut_certificates_verify(g in regular_graph()) {
        let c = cyclic_edge_connectivity(&g).unwrap();
        let oc = odd_cyclic_edge_connectivity(&g).unwrap();
        prop_assert!(verify_value(&g, &c, false).is_ok());
        prop_assert!(verify_value(&g, &oc, true).is_ok());
        prop_assert!(oc.value >= c.value);
        if g.is_bipartite() {
            prop_assert!(!oc.value.is_finite());
        }
    }

    #[test]
    fn ear_packings_are_valid(g in regular_graph(), pick in any::<u64>()) {
        let u: Vec<usize> = (0..g.n()).filter(|&v| pick >> v & 1 == 1).take(4).collect();
        if u.is_empty() {
            prop_assert!(max_odd_ear_packing(&g, &u, SearchOptions::default()).is_err());
            return Ok(());
        }
        let search = max_odd_ear_packing(&g, &u, SearchOptions::default()).unwrap();
        prop_assert!(verify_packing(&g, &search.packing).is_ok());
        for ear in &search.packing.ears {
            prop_assert!(validate_ear(&g, &u, ear).is_ok());
            prop_assert!(ear.is_odd());
        }
        prop_assert!(search.upper_bound >= search.k());
    }

    #[test]
    fn tree_inequality(seed in any::<u64>(), r in 4..=5usize, d in 4..=6usize, size in 1..40usize) {
        let Ok(g) = random_regular(30, r, seed) else { return Ok(()) };
        if !g.is_connected() {
            return Ok(());
        }
        let (t, l) = sample_tree_instance(&g, size, d, seed ^ 1);
        let res = lemma10_check(&g, &t, &l, d).unwrap();
        prop_assert!(res.holds);
    }

    #[test]
    fn case_flags_are_recomputable(g in regular_graph(), order in proptest::collection::vec(any::<usize>(), 1..12), size in 2..4usize) {
        let m = some_matching(&g, &order, size);
        if m.size() < 2 {
            return Ok(());
        }
        let budget = Budget { ear_nodes: 200_000, max_cycles: 100_000 };
        let report = evaluate_hypotheses(&g, &m, budget).unwrap();
        prop_assert_eq!(report.recompute_cases(), (report.case_i, report.case_ii));
        prop_assert_eq!(report.hypothesis_met(), report.case_i || report.case_ii);
        let again = evaluate_hypotheses(&g, &m, budget).unwrap();
        prop_assert_eq!(again, report);
    }
}

#[test]
fn builders_are_deterministic_and_sound() {
    let mut grid = vec![(Family::Lemma3, 2, 3)];
    for r in 3..=5 {
        for m in 2..=3 {
            for family in [Family::SharpnessI, Family::SharpnessLambda, Family::SharpnessIi] {
                grid.push((family, m, r));
            }
        }
    }
    let opts = VerifyOptions {
        max_cycles: 200,
        ear_budget: 200_000,
    };
    for (family, param, r) in grid {
        let a = smallest_instance(family, param, r).unwrap();
        let b = smallest_instance(family, param, r).unwrap();
        assert_eq!(a, b, "{family:?} m = {param} r = {r}");
        assert_eq!(a.graph.is_regular(), Some(r));
        let report = verify_expectations(&a, opts);
        assert!(report.guaranteed_hold, "{family:?} m = {param} r = {r}: {:#?}", report.rows);

        // the sidecar reattaches to its graph
        let json = serde_json::to_string(&a.sidecar()).unwrap();
        let back = ConstructionOutput::from_parts(a.graph.clone(), serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn cubic_corpus_counts() {
    let counts: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| common::connected_cubic_graphs(n).len()).collect();
    assert_eq!(counts, [1, 2, 5, 19]);
}
