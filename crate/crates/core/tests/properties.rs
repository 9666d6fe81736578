use proptest::prelude::*;

use tailfill_core::recognize::SpiderRole;
use tailfill_core::tail::{p4_tail, qt_tail, threshold_tail, verify_completion};
use tailfill_core::{
    generate, is_member, min_tail_completion, p4_sparse_tree, pick_tail_vertex, qt_tree, solve, split_partition, split_tail,
    threshold_tree, Certificate, GenSpec, Graph, GraphClass, Mode,
};

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::new(n, pairs.zip(mask).filter(|(_, &on)| on).map(|(e, _)| e)).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m)))
}

fn instance(class: GraphClass, max_n: usize) -> impl Strategy<Value = (Graph, Certificate, usize)> {
    (1..=max_n, any::<u64>(), any::<u64>()).prop_map(move |(n, seed, pick)| {
        let (g, c) = generate(&GenSpec::new(class, n, seed)).unwrap();
        let u = pick_tail_vertex(&g, pick);
        (g, c, u)
    })
}

fn recognized(g: &Graph, class: GraphClass) -> Option<Graph> {
    match class {
        GraphClass::Split => split_partition(g).ok().map(|_| g.clone()),
        GraphClass::Threshold => threshold_tree(g).ok().map(|t| t.expand()),
        GraphClass::Qt => qt_tree(g).ok().map(|t| t.expand()),
        GraphClass::P4Sparse => p4_sparse_tree(g).ok().map(|t| t.expand()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn recognizers_agree_with_definitions(g in any_graph(8)) {
        for class in GraphClass::ALL {
            let got = recognized(&g, class);
            prop_assert_eq!(got.is_some(), is_member(&g, class), "{}", class);
            if let Some(h) = got {
                prop_assert_eq!(h.to_text(), g.to_text());
            }
        }
    }

    #[test]
    fn witnesses_are_forbidden_subgraphs(g in any_graph(8)) {
        for class in GraphClass::ALL {
            let err = match class {
                GraphClass::Split => split_partition(&g).err(),
                GraphClass::Threshold => threshold_tree(&g).err(),
                GraphClass::Qt => qt_tree(&g).err(),
                GraphClass::P4Sparse => p4_sparse_tree(&g).err(),
            };
            if let Some(e) = err {
                let w = e.witness().expect("non-members carry a witness");
                let (sub, _) = g.induced_subgraph(&w).unwrap();
                prop_assert!(!is_member(&sub, class), "{} witness {:?}", class, w);
            }
        }
    }

    #[test]
    fn threshold_trees_are_qt_trees(g in any_graph(8)) {
        if let Ok(t) = threshold_tree(&g) {
            prop_assert_eq!(t.to_qt_tree().expand().to_text(), g.to_text());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn tail_matches_oracle((g, _c, u) in instance(GraphClass::P4Sparse, 7)) {
        let r = solve(&g, GraphClass::P4Sparse, u, Mode::Corrected).unwrap();
        prop_assert_eq!(r.fill_count, min_tail_completion(&g, GraphClass::P4Sparse, u).unwrap().fill_count);
    }

    #[test]
    fn attach_classes_match_oracle(class in prop_oneof![Just(GraphClass::Split), Just(GraphClass::Threshold), Just(GraphClass::Qt)],
                                  n in 1usize..=7, seed: u64, pick: u64) {
        let (g, _) = generate(&GenSpec::new(class, n, seed)).unwrap();
        let u = pick_tail_vertex(&g, pick);
        let r = solve(&g, class, u, Mode::Corrected).unwrap();
        prop_assert_eq!(r.fill_count, min_tail_completion(&g, class, u).unwrap().fill_count);
    }

    #[test]
    fn witnesses_are_sound(class in prop_oneof![Just(GraphClass::Split), Just(GraphClass::Threshold), Just(GraphClass::Qt), Just(GraphClass::P4Sparse)],
                           n in 1usize..=9, seed: u64, pick: u64) {
        let (g, _) = generate(&GenSpec::new(class, n, seed)).unwrap();
        let u = pick_tail_vertex(&g, pick);
        let r = solve(&g, class, u, Mode::Corrected).unwrap();
        prop_assert_eq!(r.fill_edges.len(), r.fill_count);
        let w = g.n();
        for &(a, b) in &r.fill_edges {
            prop_assert!(a < b && b <= w);
            prop_assert!((a, b) != (u, w) && (b == w || !g.has_edge(a, b)));
        }
        let h = g.with_additions(1, r.fill_edges.iter().copied().chain([(u, w)])).unwrap();
        prop_assert!(is_member(&h, class));
        prop_assert!(verify_completion(&g, class, u, &r.fill_edges).is_ok());
    }

    #[test]
    fn split_closed_form((g, c, u) in instance(GraphClass::Split, 9)) {
        let Certificate::Split(p) = c else { unreachable!() };
        let r = split_tail(&g, &p, u).unwrap();
        let expect = if p.in_clique(u) { 0 } else { p.clique_s().iter().filter(|&&k| !g.has_edge(u, k)).count() };
        prop_assert_eq!(r.fill_count, expect);
        prop_assert!(p.independent().is_empty() || p.clique().len() - p.clique_s().len() <= 1);
    }

    /// `w` as a twin of `u` costs `deg(u)`, except where a twin would break
    /// the spider `u` is a leg of.
    #[test]
    fn p4_bounded_by_degree((g, c, u) in instance(GraphClass::P4Sparse, 12)) {
        let Certificate::P4Sparse(t) = c else { unreachable!() };
        let r = p4_tail(&g, &t, u).unwrap();
        let parent = t.parent(t.leaf_of(u).unwrap());
        let leg = parent.and_then(|p| t.spider_at(p)).is_some_and(|sp| sp.role(u) != SpiderRole::R);
        if !leg {
            prop_assert!(r.fill_count <= g.degree(u));
        }
    }

    #[test]
    fn class_chain_is_monotone((g, c, u) in instance(GraphClass::Threshold, 12)) {
        let Certificate::Threshold(t) = c else { unreachable!() };
        let th = threshold_tail(&t, u, Mode::Corrected).unwrap().fill_count;
        let qt = qt_tail(&qt_tree(&g).unwrap(), u, Mode::Corrected).unwrap().fill_count;
        let p4 = p4_tail(&g, &p4_sparse_tree(&g).unwrap(), u).unwrap().fill_count;
        prop_assert!(th >= qt && qt >= p4, "{} {} {}", th, qt, p4);
    }

    #[test]
    fn deterministic((g, _c, u) in instance(GraphClass::P4Sparse, 12)) {
        let a = solve(&g, GraphClass::P4Sparse, u, Mode::Corrected).unwrap();
        let b = solve(&g, GraphClass::P4Sparse, u, Mode::Corrected).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn generated_certificates_describe_their_graphs(class in prop_oneof![Just(GraphClass::Threshold), Just(GraphClass::Qt), Just(GraphClass::P4Sparse)],
                                                   n in 1usize..=40, seed: u64) {
        let (g, c) = generate(&GenSpec::new(class, n, seed)).unwrap();
        let matches = match &c {
            Certificate::Threshold(t) => t.matches(&g),
            Certificate::Qt(t) => t.matches(&g),
            Certificate::P4Sparse(t) => t.matches(&g),
            Certificate::Split(_) => unreachable!(),
        };
        prop_assert!(matches);
        prop_assert!(recognized(&g, class).is_some());
    }
}
