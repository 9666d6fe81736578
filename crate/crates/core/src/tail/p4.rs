//! P4-sparse completion over the decomposition tree.
//!
//! With `t_0 … t_h` the path from the root to the parent of `u`'s leaf and
//! `V_i` the vertices hanging off `t_i`, the candidates are:
//!
//! * formation 1: `w` copies `N(u)`, unless `u` is in the `S` or `K` part
//!   of its parent spider (a twin there breaks the spider);
//! * formation 2 at a 1- or 2-node `t_i`: `w` copies `N(u)` above `t_i`,
//!   and `u` becomes adjacent to everything at or below it;
//! * a new P4 `w u a b` with `t_i` a 1-node and `t_{i+1}` a 0-node, `a` a
//!   leaf child of `t_i` and `b` a leaf child of `t_{i+1}`;
//! * the spider constructions when `t_h` is a 2-node;
//! * a thin ancestor `t_i` whose head contains `u`: `u` joins `K` after
//!   absorbing the rest of the head, `w` joins `S`.
//!
//! Ties go to the earlier kind in that list, then the smaller index.

use crate::graph::{Edge, Graph};
use crate::oracle::GraphClass;
use crate::recognize::{NodeLabel, P4SparseTree, PathPartition, SpiderRole, TreeSpider};

use super::spider::{spider_lemma, Parts, SpiderCost};
use super::{normalize, pick, verify_completion, Candidate, CandidateKind, CompletionResult, TailError};

struct Walk<'a> {
    t: &'a P4SparseTree,
    pp: PathPartition<'a>,
    u: usize,
    w: usize,
}

impl<'a> Walk<'a> {
    fn new(t: &'a P4SparseTree, u: usize) -> Result<Self, TailError> {
        let pp = t.path_partition(u)?;
        Ok(Walk { t, pp, u, w: t.n() })
    }

    fn label(&self, i: usize) -> NodeLabel {
        self.t.label(self.pp.node(i))
    }

    fn spider(&self, i: usize) -> Option<&'a TreeSpider> {
        self.t.spider_at(self.pp.node(i))
    }

    fn head(&self, sp: &TreeSpider) -> &'a [usize] {
        sp.r.map_or(&[][..], |r| self.t.leaves(r))
    }

    /// `N(u) ∩ V_i` and `V_i \ N(u)`.
    fn split_level(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let all = || self.pp.vertices(i).collect::<Vec<_>>();
        match self.label(i) {
            NodeLabel::Leaf(_) | NodeLabel::Zero => (Vec::new(), all()),
            NodeLabel::One => (all(), Vec::new()),
            NodeLabel::Two(_) => {
                let sp = self.spider(i).expect("2-node has a spider");
                if i < self.pp.h() {
                    // `u` is in the head: it sees `K` and misses `S`.
                    return (sp.k.clone(), sp.s.clone());
                }
                let head = self.head(sp);
                let (mut yes, mut no) = (Vec::new(), Vec::new());
                match sp.role(self.u) {
                    SpiderRole::S(j) => {
                        let (adj, non) = if sp.thin { (&mut yes, &mut no) } else { (&mut no, &mut yes) };
                        adj.push(sp.k[j]);
                        non.extend(others(&sp.k, sp.k[j]));
                        no.extend(others(&sp.s, self.u));
                        no.extend_from_slice(head);
                    }
                    SpiderRole::K(j) => {
                        yes.extend(others(&sp.k, self.u));
                        yes.extend_from_slice(head);
                        let (adj, non) = if sp.thin { (&mut yes, &mut no) } else { (&mut no, &mut yes) };
                        adj.push(sp.s[j]);
                        non.extend(others(&sp.s, sp.s[j]));
                    }
                    SpiderRole::R => {
                        yes.extend_from_slice(&sp.k);
                        no.extend_from_slice(&sp.s);
                    }
                }
                (yes, no)
            }
        }
    }

    fn neighbors_above(&self, i: usize) -> Vec<Edge> {
        (0..i).flat_map(|j| self.split_level(j).0).map(|x| (self.w, x)).collect()
    }

    fn non_neighbors_from(&self, i: usize) -> Vec<Edge> {
        (i..=self.pp.h()).flat_map(|j| self.split_level(j).1).map(|x| (self.u, x)).collect()
    }

    /// First leaf child of `t_i` other than the path continuation.
    fn leaf_child(&self, i: usize) -> Option<usize> {
        let next = if i < self.pp.h() { self.pp.node(i + 1) } else { self.t.leaf_of(self.u).ok()? };
        self.t.children(self.pp.node(i)).iter().find_map(|&c| match self.t.label(c) {
            NodeLabel::Leaf(v) if c != next => Some(v),
            _ => None,
        })
    }

    fn spider_at_parent(&self) -> Option<SpiderCost> {
        let h = self.pp.h();
        let sp = self.spider(h)?;
        let parts = Parts { s: &sp.s, k: &sp.k, thin: sp.thin, r: self.head(sp) };
        // `u ∈ R` here means `R = {u}`: nothing is missing and `K1 + uw`
        // needs no fill.
        let cost = spider_lemma(&parts, self.u, self.w, Vec::new, || Ok((0, Vec::new()))).expect("u is a leaf child of its parent spider");
        Some(cost)
    }

    fn costs(&self) -> (Vec<(CandidateKind, usize)>, Option<SpiderCost>) {
        let pp = &self.pp;
        let h = pp.h();
        if self.t.n() == 1 {
            return (vec![(CandidateKind::Formation1, 0)], None);
        }
        let mut out = Vec::new();
        // A twin of `u` is only allowed where `u` is not a leg of its
        // parent spider.
        let leg = self.spider(h).is_some_and(|sp| sp.role(self.u) != SpiderRole::R);
        if !leg {
            out.push((CandidateKind::Formation1, pp.above_adjacent(h + 1)));
        }
        for i in 0..=h {
            if matches!(self.label(i), NodeLabel::One | NodeLabel::Two(_)) {
                out.push((CandidateKind::Formation2 { i }, pp.above_adjacent(i) + pp.below_non_adjacent(i)));
            }
        }
        for i in 0..h {
            if self.label(i) == NodeLabel::One && self.label(i + 1) == NodeLabel::Zero {
                if let (Some(a), Some(b)) = (self.leaf_child(i), self.leaf_child(i + 1)) {
                    let cost = pp.above_adjacent(i) + pp.size(i) - 1 + pp.size(i + 1) - 1 + pp.below_non_adjacent(i + 2);
                    out.push((CandidateKind::NewP4 { i, a, b }, cost));
                }
            }
        }
        let spider = self.spider_at_parent();
        if let Some(sc) = &spider {
            out.push((CandidateKind::SpiderAtParent(sc.case), sc.cost + pp.above_adjacent(h)));
        }
        for i in 0..h {
            if self.spider(i).is_some_and(|sp| sp.thin) {
                out.push((CandidateKind::ThinAncestorR { i }, pp.above_adjacent(i) + pp.below_non_adjacent(i + 1)));
            }
        }
        (out, spider)
    }

    fn fills(&self, kind: CandidateKind, spider: Option<&SpiderCost>) -> Vec<Edge> {
        let (above, mut fills) = match kind {
            CandidateKind::Formation1 => (self.pp.h() + 1, Vec::new()),
            CandidateKind::Formation2 { i } => (i, self.non_neighbors_from(i)),
            CandidateKind::NewP4 { i, a, b } => {
                let mut fills: Vec<Edge> = self.pp.vertices(i).filter(|&x| x != a).map(|x| (self.w, x)).collect();
                fills.extend(self.pp.vertices(i + 1).filter(|&x| x != b).map(|x| (self.u, x)));
                fills.extend(self.non_neighbors_from(i + 2));
                (i, fills)
            }
            CandidateKind::SpiderAtParent(_) => (self.pp.h(), spider.expect("spider candidate present").fills.clone()),
            CandidateKind::ThinAncestorR { i } => (i, self.non_neighbors_from(i + 1)),
            other => unreachable!("not a P4-sparse candidate: {other:?}"),
        };
        fills.extend(self.neighbors_above(above));
        normalize(fills)
    }
}

fn others(xs: &[usize], skip: usize) -> impl Iterator<Item = usize> + '_ {
    xs.iter().copied().filter(move |&x| x != skip)
}

/// Minimum completion from the tree alone, without the membership check.
pub fn p4_tail_unverified(t: &P4SparseTree, u: usize) -> Result<CompletionResult, TailError> {
    let walk = Walk::new(t, u)?;
    let (costs, spider) = walk.costs();
    let best = pick(&costs);
    let (winner, fill_count) = costs[best];
    let fill_edges = walk.fills(winner, spider.as_ref());
    Ok(CompletionResult { fill_count, fill_edges, winner, all_candidates: costs })
}

pub fn p4_tail(g: &Graph, t: &P4SparseTree, u: usize) -> Result<CompletionResult, TailError> {
    g.check_vertex(u)?;
    if !t.matches(g) {
        return Err(TailError::StructureMismatch);
    }
    let result = p4_tail_unverified(t, u)?;
    verify_completion(g, GraphClass::P4Sparse, u, &result.fill_edges)?;
    Ok(result)
}

pub fn p4_candidates(g: &Graph, t: &P4SparseTree, u: usize) -> Result<Vec<Candidate>, TailError> {
    g.check_vertex(u)?;
    if !t.matches(g) {
        return Err(TailError::StructureMismatch);
    }
    let walk = Walk::new(t, u)?;
    let (costs, spider) = walk.costs();
    Ok(costs.into_iter().map(|(kind, cost)| Candidate { kind, cost, fills: walk.fills(kind, spider.as_ref()) }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_tail_completion;
    use crate::recognize::p4_sparse_tree;
    use crate::tail::SpiderCase;

    fn run(g: &Graph, u: usize) -> CompletionResult {
        p4_tail(g, &p4_sparse_tree(g).unwrap(), u).unwrap()
    }

    #[test]
    fn star_leaf() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = run(&g, 1);
        assert_eq!(r.fill_count, 1);
        assert_eq!(r.winner, CandidateKind::Formation1);
        assert_eq!(r.fill_edges, vec![(0, 4)]);
    }

    #[test]
    fn thin_spider_u_in_k() {
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let r = run(&g, 0);
        assert_eq!(r.fill_count, 2);
        let cands = p4_candidates(&g, &p4_sparse_tree(&g).unwrap(), 0).unwrap();
        assert!(cands.iter().any(|c| c.kind == CandidateKind::SpiderAtParent(SpiderCase::ThinK) && c.cost == 2));
    }

    #[test]
    fn p4_inner_vertex() {
        let g = Graph::path(4);
        let r = run(&g, 1);
        assert_eq!(r.fill_count, 1);
        assert_eq!(r.fill_edges, vec![(1, 3)]);
        assert_eq!(min_tail_completion(&g, GraphClass::P4Sparse, 1).unwrap().fill_count, 1);
    }

    #[test]
    fn two_k2_matches_oracle() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let oracle = min_tail_completion(&g, GraphClass::P4Sparse, 0).unwrap().fill_count;
        assert_eq!(oracle, 0);
        assert_eq!(run(&g, 0).fill_count, oracle);
    }

    #[test]
    fn single_vertex() {
        let r = run(&Graph::empty(1), 0);
        assert_eq!(r.fill_count, 0);
    }

    #[test]
    fn spider_leg_cannot_take_a_twin() {
        // Thin spider S = {0, 1}, K = {2, 3}, head {4, 5}: the pendant
        // vertex needs two fills although it has one neighbour.
        let g = Graph::new(6, [(0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)]).unwrap();
        assert_eq!(run(&g, 0).fill_count, 2);
        for u in 0..6 {
            let r = run(&g, u);
            assert_eq!(r.fill_count, min_tail_completion(&g, GraphClass::P4Sparse, u).unwrap().fill_count, "u={u}");
        }
    }
}
