use crate::graph::{Graph, GraphError};
use crate::pattern::{find_induced, PatternKind};

use super::qt::{QtBuilder, QtTree};
use super::{fmt_ids, RecognizeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Clique,
    Independent,
}

/// One level of the tree: the clique vertices `C_d` and the independent
/// vertices `I_d`, which see exactly `C_0 .. C_{d-1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThresholdLevel {
    pub clique: Vec<usize>,
    pub indep: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdTree {
    levels: Vec<ThresholdLevel>,
    level_of: Vec<(usize, Side)>,
}

impl ThresholdTree {
    /// Checks the level layout and computes the vertex index. Levels must
    /// cover `0..n` exactly once, `C_d` nonempty for `d < h`, and `I_d`
    /// nonempty for `d >= 1`.
    pub fn from_levels(n: usize, mut levels: Vec<ThresholdLevel>) -> Result<Self, RecognizeError> {
        if levels.is_empty() {
            levels.push(ThresholdLevel::default());
        }
        let mut level_of = vec![(usize::MAX, Side::Clique); n];
        for (d, level) in levels.iter_mut().enumerate() {
            level.clique.sort_unstable();
            level.indep.sort_unstable();
            for (side, set) in [(Side::Clique, &level.clique), (Side::Independent, &level.indep)] {
                for &v in set.iter() {
                    if v >= n {
                        return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
                    }
                    if level_of[v].0 != usize::MAX {
                        return Err(RecognizeError::InvalidStructure(format!("vertex {v} listed twice")));
                    }
                    level_of[v] = (d, side);
                }
            }
        }
        if let Some(v) = level_of.iter().position(|&(d, _)| d == usize::MAX) {
            return Err(RecognizeError::InvalidStructure(format!("vertex {v} missing")));
        }
        let h = levels.len() - 1;
        for (d, level) in levels.iter().enumerate() {
            if d < h && level.clique.is_empty() {
                return Err(RecognizeError::InvalidStructure(format!("clique level {d} is empty")));
            }
            if d >= 1 && level.indep.is_empty() {
                return Err(RecognizeError::InvalidStructure(format!("independent group {d} is empty")));
            }
        }
        // Canonical form: the peeling below would regroup a lone deepest
        // clique vertex, or a lone vertex left under the last clique level.
        let last = &levels[h];
        if n == 1 && last.clique.len() != 1 {
            return Err(RecognizeError::InvalidStructure("a single vertex is a clique level".into()));
        }
        if n >= 2 && (last.clique.len() == 1 || h >= 1 && last.clique.is_empty() && last.indep.len() == 1) {
            return Err(RecognizeError::InvalidStructure("deepest level is not canonical".into()));
        }
        Ok(ThresholdTree { levels, level_of })
    }

    pub fn n(&self) -> usize {
        self.level_of.len()
    }

    /// Index of the deepest level.
    pub fn h(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[ThresholdLevel] {
        &self.levels
    }

    pub fn clique(&self, d: usize) -> &[usize] {
        &self.levels[d].clique
    }

    pub fn indep(&self, d: usize) -> &[usize] {
        &self.levels[d].indep
    }

    pub fn level_of(&self, v: usize) -> Result<(usize, Side), GraphError> {
        self.level_of.get(v).copied().ok_or(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
    }

    /// Vertices from most to least dominant: `C_0 .. C_h`, then `I_h .. I_0`.
    pub fn rank_order(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.levels.iter().flat_map(|l| l.clique.iter().copied()).collect();
        out.extend(self.levels.iter().rev().flat_map(|l| l.indep.iter().copied()));
        out
    }

    pub fn edge_count(&self) -> usize {
        let cliques: usize = self.levels.iter().map(|l| l.clique.len()).sum();
        let mut total = cliques * cliques.saturating_sub(1) / 2;
        let mut above = 0;
        for level in &self.levels {
            total += level.indep.len() * above;
            above += level.clique.len();
        }
        total
    }

    pub fn expand(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count());
        let mut above: Vec<usize> = Vec::new();
        for level in &self.levels {
            for &x in &level.indep {
                edges.extend(above.iter().map(|&c| (c.min(x), c.max(x))));
            }
            for &c in &level.clique {
                edges.extend(above.iter().map(|&a| (a.min(c), a.max(c))));
                above.push(c);
            }
        }
        Graph::new(self.n(), edges).expect("level structure yields a simple graph")
    }

    /// `true` iff the level structure expands to exactly `G`, in `O(n + m)`.
    pub fn matches(&self, g: &Graph) -> bool {
        if g.n() != self.n() || g.m() != self.edge_count() {
            return false;
        }
        g.edges().all(|(a, b)| {
            let (da, sa) = self.level_of[a];
            let (db, sb) = self.level_of[b];
            match (sa, sb) {
                (Side::Clique, Side::Clique) => true,
                (Side::Clique, Side::Independent) => da < db,
                (Side::Independent, Side::Clique) => db < da,
                (Side::Independent, Side::Independent) => false,
            }
        })
    }

    pub fn serialize(&self) -> String {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, l)| format!("C{d}:{} I{d}:{}", fmt_ids(&l.clique), fmt_ids(&l.indep)))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// The same graph as a canonical quasi-threshold tree: `C_0` at the
    /// root, each `C_d` a child of `C_{d-1}`, and every vertex of `I_d` a
    /// leaf bag under `C_{d-1}`. Isolated vertices hang under an empty root.
    pub fn to_qt_tree(&self) -> QtTree {
        let mut b = QtBuilder::default();
        let h = self.h();
        let mut below: Option<usize> = None;
        if h >= 1 && !self.levels[h].clique.is_empty() {
            below = Some(b.node(self.levels[h].clique.clone(), Vec::new()));
        }
        for d in (1..=h).rev() {
            let mut kids: Vec<usize> = self.levels[d].indep.iter().map(|&x| b.node(vec![x], Vec::new())).collect();
            kids.extend(below);
            below = Some(b.node(self.levels[d - 1].clique.clone(), kids));
        }
        let top = &self.levels[0];
        let root = if top.indep.is_empty() {
            match below {
                Some(r) => r,
                None => b.node(top.clique.clone(), Vec::new()),
            }
        } else {
            let mut kids: Vec<usize> = top.indep.iter().map(|&x| b.node(vec![x], Vec::new())).collect();
            if let Some(r) = below {
                kids.push(r);
            } else if !top.clique.is_empty() {
                kids.push(b.node(top.clique.clone(), Vec::new()));
            }
            b.node(Vec::new(), kids)
        };
        b.finish(root, self.n()).expect("threshold levels form a canonical tree")
    }
}

/// Peels isolated and universal vertices alternately. The current degree of
/// a remaining vertex is its degree minus the number of removed clique
/// vertices, since removed independent vertices had no remaining neighbours.
pub fn threshold_tree(g: &Graph) -> Result<ThresholdTree, RecognizeError> {
    let n = g.n();
    if n == 1 {
        return ThresholdTree::from_levels(1, vec![ThresholdLevel { clique: vec![0], indep: Vec::new() }]);
    }
    // Counting sort by degree.
    let mut buckets = vec![0usize; n + 1];
    for v in 0..n {
        buckets[g.degree(v)] += 1;
    }
    let mut start = 0;
    for b in buckets.iter_mut() {
        let c = *b;
        *b = start;
        start += c;
    }
    let mut order = vec![0usize; n];
    for v in 0..n {
        order[buckets[g.degree(v)]] = v;
        buckets[g.degree(v)] += 1;
    }

    let (mut lo, mut hi) = (0usize, n);
    let mut removed_clique = 0;
    let mut levels: Vec<ThresholdLevel> = vec![ThresholdLevel::default()];
    let take_isolated = |lo: &mut usize, hi: usize, removed: usize| {
        let from = *lo;
        while *lo < hi && g.degree(order[*lo]) == removed {
            *lo += 1;
        }
        order[from..*lo].to_vec()
    };
    levels[0].indep = take_isolated(&mut lo, hi, removed_clique);
    while lo < hi {
        let rem = hi - lo;
        let from = hi;
        while lo < hi && g.degree(order[hi - 1]) - removed_clique == rem - 1 {
            hi -= 1;
        }
        if from == hi {
            return Err(threshold_witness(g));
        }
        removed_clique += from - hi;
        levels.last_mut().unwrap().clique = order[hi..from].to_vec();
        if lo == hi {
            break;
        }
        let indep = take_isolated(&mut lo, hi, removed_clique);
        if indep.is_empty() {
            return Err(threshold_witness(g));
        }
        levels.push(ThresholdLevel { clique: Vec::new(), indep });
    }
    let tree = ThresholdTree::from_levels(n, levels)?;
    if !tree.matches(g) {
        return Err(threshold_witness(g));
    }
    Ok(tree)
}

fn threshold_witness(g: &Graph) -> RecognizeError {
    for kind in [PatternKind::C4, PatternKind::P4, PatternKind::TwoK2] {
        if let Some(occ) = find_induced(g, kind) {
            return RecognizeError::NotThreshold(occ);
        }
    }
    unreachable!("peeling failed on a graph without C4, P4 or 2K2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let t = threshold_tree(&Graph::empty(1)).unwrap();
        assert_eq!(t.h(), 0);
        assert_eq!(t.clique(0), &[0]);
        assert!(t.indep(0).is_empty());
    }

    #[test]
    fn star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = threshold_tree(&g).unwrap();
        assert_eq!(t.h(), 1);
        assert_eq!(t.clique(0), &[0]);
        assert!(t.clique(1).is_empty());
        assert_eq!(t.indep(1), &[1, 2, 3]);
        assert_eq!(t.expand(), g);
        assert_eq!(t.serialize(), "C0:{0} I0:{} | C1:{} I1:{1 2 3}");
    }

    #[test]
    fn p4_rejected() {
        assert!(matches!(threshold_tree(&Graph::path(4)), Err(RecognizeError::NotThreshold(_))));
        assert!(matches!(threshold_tree(&Graph::cycle(4)), Err(RecognizeError::NotThreshold(_))));
    }

    #[test]
    fn edgeless_and_complete() {
        let t = threshold_tree(&Graph::empty(3)).unwrap();
        assert_eq!(t.indep(0), &[0, 1, 2]);
        assert!(t.clique(0).is_empty());
        let t = threshold_tree(&Graph::complete(2)).unwrap();
        assert_eq!(t.clique(0), &[0, 1]);
        assert_eq!(t.h(), 0);
    }

    #[test]
    fn mixed_levels_round_trip() {
        // 5 isolated; 0 dominating {1,2,3,4}; 1 dominating {2,3,4}; 2,3,4 independent.
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let t = threshold_tree(&g).unwrap();
        assert_eq!(t.serialize(), "C0:{0 1} I0:{5} | C1:{} I1:{2 3 4}");
        assert_eq!(t.expand(), g);
        assert_eq!(t.rank_order(), vec![0, 1, 2, 3, 4, 5]);
        let qt = t.to_qt_tree();
        assert_eq!(qt.expand(), g);
    }

    #[test]
    fn deeper_levels() {
        // 0 universal; 1 sees only 0; 2 adjacent to 0 and 3; 3 adjacent to 0, 2, 4; 4 sees 0 and 3.
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (3, 4)]).unwrap();
        let t = threshold_tree(&g).unwrap();
        assert_eq!(t.serialize(), "C0:{0} I0:{} | C1:{3} I1:{1} | C2:{} I2:{2 4}");
        assert_eq!(t.expand(), g);
        assert_eq!(t.to_qt_tree().serialize(), "({0} ({1}) ({3} ({2}) ({4})))");
    }

    #[test]
    fn rejects_bad_levels() {
        let bad = vec![ThresholdLevel { clique: vec![], indep: vec![0] }, ThresholdLevel { clique: vec![1], indep: vec![] }];
        assert!(ThresholdTree::from_levels(2, bad).is_err());
        // K2 written as a clique vertex over one pendant.
        let bad = vec![ThresholdLevel { clique: vec![0], indep: vec![] }, ThresholdLevel { clique: vec![], indep: vec![1] }];
        assert!(ThresholdTree::from_levels(2, bad).is_err());
    }
}
