//! Which candidates decide the optimum over 500 generated instances per
//! class at n = 8.

use std::collections::BTreeMap;

use tailfill_core::fuzz::{case, FuzzConfig};
use tailfill_core::recognize::Side;
use tailfill_core::tail::{p4_recurse, thin_spider_cost, SpiderCost};
use tailfill_core::*;

struct Tally {
    wins: BTreeMap<String, usize>,
    ties: BTreeMap<&'static str, usize>,
}

fn tally(class: GraphClass) -> Tally {
    let mut config = FuzzConfig::new(class, 8, 500, 1);
    config.min_n = 8;
    let mut t = Tally { wins: BTreeMap::new(), ties: BTreeMap::new() };
    for i in 0..config.iters {
        let c = case(&config, i);
        let r = solve(&c.graph, class, c.u, Mode::Corrected).unwrap();
        let mut key = r.winner.family().to_string();
        if let (GraphClass::Threshold, CandidateKind::ThresholdAttach { level, .. }) = (class, r.winner) {
            let (i, side) = threshold_tree(&c.graph).unwrap().level_of(c.u).unwrap();
            if side == Side::Independent {
                key += if level >= i as isize { " f1" } else { " f2" };
            }
        }
        *t.wins.entry(key).or_default() += 1;
        for (kind, cost) in &r.all_candidates {
            if *cost == r.fill_count {
                *t.ties.entry(kind.family()).or_default() += 1;
            }
        }
    }
    eprintln!("{class}: wins {:?}", t.wins);
    t
}

#[test]
fn p4_sparse_candidates() {
    let t = tally(GraphClass::P4Sparse);
    for kind in ["formation1", "formation2", "new-p4", "spider-thin-s", "spider-thick-s", "spider-thin-r-universal", "thin-ancestor-r"] {
        assert!(t.wins.contains_key(kind), "{kind} never wins");
    }
    // With `u ∈ K`, or `u` the whole head, Formation 2 at the parent
    // reaches the same cost and comes first in the tie order.
    for kind in ["spider-thin-k", "spider-thick-k", "spider-thick-r"] {
        assert!(t.ties.contains_key(kind), "{kind} never reaches the optimum");
    }
}

/// Inside the full algorithm `u ∈ R` means `R = {u}`, so the recursive
/// branch of the thin lemma only shows up on a spider given on its own.
#[test]
fn thin_head_recursion() {
    // S = {0, 1}, K = {2, 3}, edgeless head {4 .. 7}.
    let mut edges = vec![(0, 2), (1, 3), (2, 3)];
    for k in [2, 3] {
        edges.extend((4..8).map(|r| (k, r)));
    }
    let g = Graph::new(8, edges).unwrap();
    let d = SpiderDescriptor { s: vec![0, 1], k: vec![2, 3], thin: true, r: vec![4, 5, 6, 7] };
    let SpiderCost { case, cost, .. } = thin_spider_cost(&g, &d, 4, p4_recurse(&g)).unwrap();
    assert_eq!((case, cost), (SpiderCase::ThinRRecurse, 2));
    assert_eq!(min_tail_completion(&g, GraphClass::P4Sparse, 4).unwrap().fill_count, 2);
    // The full algorithm reaches the same count through the head's 0-node.
    assert_eq!(solve(&g, GraphClass::P4Sparse, 4, Mode::Corrected).unwrap().fill_count, 2);
}

#[test]
fn threshold_candidates() {
    let t = tally(GraphClass::Threshold);
    for kind in ["threshold-attach", "threshold-attach f1", "threshold-attach f2"] {
        assert!(t.wins.contains_key(kind), "{kind} never wins");
    }
}

#[test]
fn qt_candidates() {
    let t = tally(GraphClass::Qt);
    for kind in ["qt-attach", "qt-attach-w-only"] {
        assert!(t.wins.contains_key(kind), "{kind} never wins");
    }
}

#[test]
fn split_candidates() {
    let t = tally(GraphClass::Split);
    assert_eq!(t.wins.get("split"), Some(&500));
}
