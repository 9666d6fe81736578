use crate::graph::{Graph, GraphError};
use crate::pattern::{find_induced, PatternKind};

use super::RecognizeError;

/// A partition of the vertices into a clique `K` and an independent set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    clique: Vec<usize>,
    independent: Vec<usize>,
    clique_s: Vec<usize>,
    in_clique: Vec<bool>,
}

impl SplitPartition {
    /// Validates that `clique` is a clique of `G` and its complement is
    /// independent. When `S` is nonempty, at most one clique vertex may lack
    /// a neighbour in `S`; a surplus one is moved to `S`.
    pub fn new(g: &Graph, clique: impl IntoIterator<Item = usize>) -> Result<Self, RecognizeError> {
        let mut in_clique = vec![false; g.n()];
        for v in clique {
            g.check_vertex(v)?;
            in_clique[v] = true;
        }
        let clique: Vec<usize> = (0..g.n()).filter(|&v| in_clique[v]).collect();
        for (i, &a) in clique.iter().enumerate() {
            if let Some(&b) = clique[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Err(RecognizeError::InvalidStructure(format!("clique side misses edge {a}-{b}")));
            }
        }
        for s in (0..g.n()).filter(|&v| !in_clique[v]) {
            if let Some(&x) = g.neighbors(s).iter().find(|&&x| !in_clique[x]) {
                return Err(RecognizeError::InvalidStructure(format!("independent side has edge {s}-{x}")));
            }
        }
        let has_s_neighbor = |k: usize, in_clique: &[bool]| g.neighbors(k).iter().any(|&x| !in_clique[x]);
        let mut idle = clique.iter().copied().filter(|&k| !has_s_neighbor(k, &in_clique));
        if let (true, Some(x), Some(_)) = (clique.len() < g.n(), idle.next(), idle.next()) {
            // Two clique vertices without neighbours in `S`: one of them
            // moves over, and every other clique vertex then sees it.
            in_clique[x] = false;
        }
        let clique: Vec<usize> = (0..g.n()).filter(|&v| in_clique[v]).collect();
        let independent: Vec<usize> = (0..g.n()).filter(|&v| !in_clique[v]).collect();
        let clique_s = clique.iter().copied().filter(|&k| has_s_neighbor(k, &in_clique)).collect();
        Ok(SplitPartition { clique, independent, clique_s, in_clique })
    }

    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    /// Clique vertices with at least one neighbour in the independent set.
    pub fn clique_s(&self) -> &[usize] {
        &self.clique_s
    }

    pub fn in_clique(&self, v: usize) -> bool {
        self.in_clique[v]
    }

    pub fn n(&self) -> usize {
        self.in_clique.len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn serialize(&self) -> String {
        format!("K:{} S:{}", super::fmt_ids(&self.clique), super::fmt_ids(&self.independent))
    }
}

/// Degree-sequence recognition: with degrees `d_1 >= ... >= d_n` and
/// `m = max { i : d_i >= i - 1 }`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the `m` highest
/// degree vertices form a clique.
pub fn split_partition(g: &Graph) -> Result<SplitPartition, RecognizeError> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let m = order.iter().enumerate().take_while(|&(i, &v)| g.degree(v) >= i).count();
    let head: usize = order[..m].iter().map(|&v| g.degree(v)).sum();
    let tail: usize = order[m..].iter().map(|&v| g.degree(v)).sum();
    if head == m * m.saturating_sub(1) + tail {
        if let Ok(p) = SplitPartition::new(g, order[..m].iter().copied()) {
            return Ok(p);
        }
    }
    for kind in [PatternKind::C4, PatternKind::C5, PatternKind::TwoK2] {
        if let Some(occ) = find_induced(g, kind) {
            return Err(RecognizeError::NotSplit(occ));
        }
    }
    unreachable!("degree test and forbidden-subgraph search disagree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive search over all 2^n bipartitions.
    fn brute_force_partitions(g: &Graph) -> Vec<Vec<usize>> {
        (0u32..1 << g.n())
            .filter_map(|mask| {
                let k: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
                SplitPartition::new(g, k.clone()).ok().map(|_| k)
            })
            .collect()
    }

    #[test]
    fn triangle() {
        let p = split_partition(&Graph::complete(3)).unwrap();
        assert_eq!(p.clique(), &[0, 1, 2]);
        assert!(p.independent().is_empty());
        assert!(p.clique_s().is_empty());
    }

    #[test]
    fn c4_is_not_split() {
        let err = split_partition(&Graph::cycle(4)).unwrap_err();
        match err {
            RecognizeError::NotSplit(occ) => assert_eq!(occ.kind, PatternKind::C4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn p4_partition() {
        let g = Graph::path(4);
        let p = split_partition(&g).unwrap();
        assert_eq!(p.clique(), &[1, 2]);
        assert_eq!(p.independent(), &[0, 3]);
        assert_eq!(p.clique_s(), &[1, 2]);
        // The only valid bipartition found by exhaustive search.
        assert_eq!(brute_force_partitions(&g), vec![vec![1, 2]]);
    }

    #[test]
    fn at_most_one_clique_vertex_without_s_neighbour() {
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]).unwrap();
        let p = split_partition(&g).unwrap();
        assert!(p.clique().len() - p.clique_s().len() <= 1);
    }

    #[test]
    fn surplus_clique_vertex_moves_over() {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = SplitPartition::new(&g, [0, 1, 2]).unwrap();
        assert_eq!(p.serialize(), "K:{1 2} S:{0 3}");
        assert_eq!(p.clique_s(), &[1, 2]);
    }

    #[test]
    fn rejects_bad_partition() {
        assert!(SplitPartition::new(&Graph::path(4), [0, 2]).is_err());
        assert!(SplitPartition::new(&Graph::path(4), [0, 1]).is_err());
    }
}
