//! Definitional membership tests and an exact minimum-completion search.
//!
//! Membership is decided from the forbidden-subgraph characterizations:
//! split graphs have no induced C4, C5 or 2K2; threshold graphs no induced
//! C4, P4 or 2K2; quasi-threshold graphs no induced C4 or P4; and in a
//! P4-sparse graph every 5 vertices induce at most one P4.
//!
//! The completion search is exact. Any completion must add at least one
//! pair inside every forbidden configuration of the current graph, so the
//! search branches over those pairs (disjoint branches, iterative deepening
//! on the budget). A second pass fixes the answer to the lexicographically
//! smallest optimal fill set. [`Strategy::Enumerate`] keeps the plain
//! "every k-subset of non-edges" scan for cross-checking.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{edge, Edge, Graph, GraphError};
use crate::pattern::{find_induced, induces_p4, PatternKind};
use crate::small::{bits, subsets, SmallGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Split,
    Threshold,
    Qt,
    P4Sparse,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [GraphClass::Split, GraphClass::Threshold, GraphClass::Qt, GraphClass::P4Sparse];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Split => "split",
            GraphClass::Threshold => "threshold",
            GraphClass::Qt => "qt",
            GraphClass::P4Sparse => "p4sparse",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "split" => Ok(GraphClass::Split),
            "threshold" => Ok(GraphClass::Threshold),
            "qt" | "quasithreshold" => Ok(GraphClass::Qt),
            "p4sparse" => Ok(GraphClass::P4Sparse),
            _ => Err(format!("unknown graph class {s:?} (expected split, threshold, qt or p4sparse)")),
        }
    }
}

/// Vertex sets up to this size are tested with bitmask enumeration.
const BITMASK_MEMBERSHIP: usize = 16;

/// `true` iff `G` satisfies the class's forbidden-subgraph definition.
pub fn is_member(g: &Graph, class: GraphClass) -> bool {
    find_violation(g, class).is_none()
}

/// A vertex set witnessing non-membership, if any: the vertices of a
/// forbidden induced subgraph, or a 5-set inducing two or more P4s.
pub fn find_violation(g: &Graph, class: GraphClass) -> Option<Vec<usize>> {
    if g.n() <= BITMASK_MEMBERSHIP {
        let sg = SmallGraph::from_graph(g).expect("size checked");
        let masks4 = subsets(g.n(), 4);
        let masks5 = subsets(g.n(), 5);
        return obstruction(&sg, class, &masks4, &masks5).map(|m| bits(m).collect());
    }
    let patterns: &[PatternKind] = match class {
        GraphClass::Split => &[PatternKind::C4, PatternKind::C5, PatternKind::TwoK2],
        GraphClass::Threshold => &[PatternKind::C4, PatternKind::P4, PatternKind::TwoK2],
        GraphClass::Qt => &[PatternKind::C4, PatternKind::P4],
        GraphClass::P4Sparse => return p4_sparse_violation(g),
    };
    patterns.iter().find_map(|&k| find_induced(g, k)).map(|occ| occ.vertices)
}

/// Every 5-set with two induced P4s contains at least one of them, so it
/// suffices to extend each induced P4 by one vertex.
fn p4_sparse_violation(g: &Graph) -> Option<Vec<usize>> {
    for (b, c) in g.edges() {
        for &a in g.neighbors(b) {
            if a == c || g.has_edge(a, c) {
                continue;
            }
            for &d in g.neighbors(c) {
                if d == b || d == a || g.has_edge(d, b) || g.has_edge(a, d) {
                    continue;
                }
                for x in 0..g.n() {
                    if [a, b, c, d].contains(&x) {
                        continue;
                    }
                    let five = [a, b, c, d, x];
                    let extra = (0..4)
                        .filter(|&skip| {
                            let mut four = [x; 4];
                            let mut slot = 0;
                            for (i, &v) in [a, b, c, d].iter().enumerate() {
                                if i != skip {
                                    four[slot] = v;
                                    slot += 1;
                                }
                            }
                            induces_p4(g, four)
                        })
                        .count();
                    if extra >= 1 {
                        let mut set = five.to_vec();
                        set.sort_unstable();
                        return Some(set);
                    }
                }
            }
        }
    }
    None
}

fn obstruction(sg: &SmallGraph, class: GraphClass, masks4: &[u64], masks5: &[u64]) -> Option<u64> {
    obstructions(sg, class, masks4, masks5).next()
}

/// All forbidden configurations of `sg`, as vertex masks.
fn obstructions<'a>(sg: &'a SmallGraph, class: GraphClass, masks4: &'a [u64], masks5: &'a [u64]) -> Box<dyn Iterator<Item = u64> + 'a> {
    match class {
        GraphClass::Split => Box::new(
            masks4
                .iter()
                .copied()
                .filter(move |&m| sg.is_c4(m) || sg.is_2k2(m))
                .chain(masks5.iter().copied().filter(move |&m| sg.is_c5(m))),
        ),
        GraphClass::Threshold => Box::new(masks4.iter().copied().filter(move |&m| sg.is_c4(m) || sg.is_p4(m) || sg.is_2k2(m))),
        GraphClass::Qt => Box::new(masks4.iter().copied().filter(move |&m| sg.is_c4(m) || sg.is_p4(m))),
        GraphClass::P4Sparse => Box::new(masks5.iter().copied().filter(move |&m| sg.p4_count_in_5set(m) >= 2)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub fill_count: usize,
    /// Lexicographically smallest optimal fill set, sorted.
    pub fill_edges: Vec<Edge>,
    /// Search nodes (branching) or candidate sets (enumeration) examined.
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle bound is {max}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("no completion with at most {limit} fill edges")]
    LimitExceeded { limit: usize },
    #[error("protected pair {0:?} is not an edge of the input graph")]
    ProtectedNotEdge(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Branch over non-edges inside forbidden configurations.
    Branching,
    /// Scan every k-subset of non-edges in combinatorial order.
    Enumerate,
}

pub const DEFAULT_MAX_VERTICES: usize = 10;
/// Pair sets are kept in a `u128`, which fits `C(16, 2) = 120` pairs.
pub const HARD_MAX_VERTICES: usize = 16;

/// Exhaustive minimum completion into a class.
#[derive(Debug, Clone)]
pub struct Oracle {
    class: GraphClass,
    max_vertices: usize,
    limit: usize,
    strategy: Strategy,
}

impl Oracle {
    pub fn new(class: GraphClass) -> Self {
        Oracle { class, max_vertices: DEFAULT_MAX_VERTICES, limit: usize::MAX, strategy: Strategy::Branching }
    }

    /// Raises or lowers the size bound, capped at [`HARD_MAX_VERTICES`].
    pub fn max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n.min(HARD_MAX_VERTICES);
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Minimum set of non-edges whose addition puts `G` in the class. The
    /// `protected` pair must already be an edge; it is never touched.
    pub fn min_completion(&self, g: &Graph, protected: Edge) -> Result<OracleResult, OracleError> {
        if g.n() > self.max_vertices {
            return Err(OracleError::InstanceTooLarge { n: g.n(), max: self.max_vertices });
        }
        g.check_vertex(protected.0)?;
        g.check_vertex(protected.1)?;
        if !g.has_edge(protected.0, protected.1) {
            return Err(OracleError::ProtectedNotEdge(edge(protected.0, protected.1)));
        }
        let mut search = Search::new(g, self.class);
        match self.strategy {
            Strategy::Branching => search.branching(self.limit),
            Strategy::Enumerate => search.enumerate(self.limit),
        }
        .ok_or(OracleError::LimitExceeded { limit: self.limit })
    }
}

impl Oracle {
    /// Minimum completion of `G + uw` with `w = n`; the tail is protected.
    pub fn min_tail_completion(&self, g: &Graph, u: usize) -> Result<OracleResult, OracleError> {
        let h = g.add_tail(u)?;
        self.min_completion(&h, (u, g.n()))
    }
}

/// Minimum completion of `G + uw` with the default bound and strategy.
pub fn min_tail_completion(g: &Graph, class: GraphClass, u: usize) -> Result<OracleResult, OracleError> {
    Oracle::new(class).min_tail_completion(g, u)
}

/// Convenience wrapper with the default bound and strategy.
pub fn min_completion(g: &Graph, class: GraphClass, protected: Edge, limit: usize) -> Result<OracleResult, OracleError> {
    Oracle::new(class).limit(limit).min_completion(g, protected)
}

struct Search {
    sg: SmallGraph,
    class: GraphClass,
    n: usize,
    masks4: Vec<u64>,
    masks5: Vec<u64>,
    explored: u64,
    found: Vec<Edge>,
}

impl Search {
    fn new(g: &Graph, class: GraphClass) -> Self {
        let n = g.n();
        Search {
            sg: SmallGraph::from_graph(g).expect("bounded by HARD_MAX_VERTICES"),
            class,
            n,
            masks4: subsets(n, 4),
            masks5: subsets(n, 5),
            explored: 0,
            found: Vec::new(),
        }
    }

    /// Dense lexicographic index of the pair `a < b`.
    fn pair_index(&self, (a, b): Edge) -> u32 {
        (a * (2 * self.n - a - 1) / 2 + (b - a - 1)) as u32
    }

    fn non_edges(&self) -> Vec<Edge> {
        (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).filter(|&(a, b)| !self.sg.has_edge(a, b)).collect()
    }

    fn is_member(&self) -> bool {
        obstruction(&self.sg, self.class, &self.masks4, &self.masks5).is_none()
    }

    fn enumerate(&mut self, limit: usize) -> Option<OracleResult> {
        let candidates = self.non_edges();
        for k in 0..=limit.min(candidates.len()) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                self.explored += 1;
                for &i in &idx {
                    self.sg.add_edge(candidates[i]);
                }
                let hit = self.is_member();
                for &i in &idx {
                    self.sg.remove_edge(candidates[i]);
                }
                if hit {
                    return Some(OracleResult {
                        fill_count: k,
                        fill_edges: idx.iter().map(|&i| candidates[i]).collect(),
                        explored: self.explored,
                    });
                }
                // Next combination in lexicographic order.
                let Some(pos) = (0..k).rev().find(|&p| idx[p] < candidates.len() - k + p) else { break };
                idx[pos] += 1;
                for p in pos + 1..k {
                    idx[p] = idx[p - 1] + 1;
                }
            }
        }
        None
    }

    fn branching(&mut self, limit: usize) -> Option<OracleResult> {
        let candidates = self.non_edges();
        let k = (0..=limit.min(candidates.len())).find(|&k| {
            let mut chosen = Vec::new();
            self.exists(k, 0, &mut chosen)
        })?;
        // Fix the fill set one position at a time, smallest pair first, such
        // that the remaining positions can still be completed with larger pairs.
        let mut fills = Vec::with_capacity(k);
        let mut start = 0;
        for slot in 0..k {
            let mut committed = false;
            for (ci, &e) in candidates.iter().enumerate().skip(start) {
                self.sg.add_edge(e);
                let forbidden = self.prefix_mask(e);
                let mut chosen = Vec::new();
                if self.exists(k - slot - 1, forbidden, &mut chosen) {
                    fills.push(e);
                    start = ci + 1;
                    committed = true;
                    break;
                }
                self.sg.remove_edge(e);
            }
            debug_assert!(committed, "an optimal completion was found before");
        }
        for &e in &fills {
            self.sg.remove_edge(e);
        }
        Some(OracleResult { fill_count: k, fill_edges: fills, explored: self.explored })
    }

    /// Mask of every pair with index `<=` that of `e`.
    fn prefix_mask(&self, e: Edge) -> u128 {
        let i = self.pair_index(e);
        if i >= 127 {
            u128::MAX
        } else {
            (1u128 << (i + 1)) - 1
        }
    }

    /// Can at most `budget` more pairs, none in `forbidden`, complete the
    /// current graph? Leaves the graph unchanged; on success the chosen pairs
    /// are stored in `self.found`.
    fn exists(&mut self, budget: usize, forbidden: u128, chosen: &mut Vec<Edge>) -> bool {
        self.explored += 1;
        if budget == 0 {
            if self.is_member() {
                self.found = chosen.clone();
                return true;
            }
            return false;
        }
        // Pick the configuration with the fewest admissible pairs.
        let mut best: Option<Vec<Edge>> = None;
        for m in obstructions(&self.sg, self.class, &self.masks4, &self.masks5) {
            let options: Vec<Edge> = self.sg.non_edges_within(m).filter(|&e| forbidden >> self.pair_index(e) & 1 == 0).collect();
            if options.is_empty() {
                return false;
            }
            if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                let one = options.len() == 1;
                best = Some(options);
                if one {
                    break;
                }
            }
        }
        let Some(options) = best else {
            self.found = chosen.clone();
            return true;
        };
        let mut forbidden = forbidden;
        for e in options {
            self.sg.add_edge(e);
            chosen.push(e);
            let ok = self.exists(budget - 1, forbidden, chosen);
            chosen.pop();
            self.sg.remove_edge(e);
            if ok {
                return true;
            }
            forbidden |= 1u128 << self.pair_index(e);
        }
        false
    }
}
