//! Minimum fill-edge completions of `G + uw`, where `w` is a new vertex with
//! id `n` and `uw` is the tail.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{edge, Edge, Graph, GraphError};
use crate::oracle::{is_member, GraphClass};
use crate::recognize::{p4_sparse_tree, qt_tree, split_partition, threshold_tree, RecognizeError};

mod attach;
mod p4;
mod spider;
mod split;

pub use attach::{qt_candidates, qt_tail, qt_tail_unverified, threshold_candidates, threshold_tail, threshold_tail_unverified};
pub use p4::{p4_candidates, p4_tail, p4_tail_unverified};
pub use spider::{p4_recurse, thick_spider_cost, thin_spider_cost, SpiderCost};
pub use split::{split_candidates, split_tail, split_tail_unverified};

/// How the threshold and quasi-threshold attach formulas treat their
/// boundary terms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Absorb range from `ℓ+1`, no deduction for `u` in the clique sum.
    Verbatim,
    /// Absorb range from `ℓ+2`, `u` itself deducted from the clique sum,
    /// plus the candidate where `w` sees only `u`. Matches the exact oracle.
    #[default]
    Corrected,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Verbatim => "verbatim",
            Mode::Corrected => "corrected",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "verbatim" => Ok(Mode::Verbatim),
            "corrected" => Ok(Mode::Corrected),
            _ => Err(format!("unknown mode {s:?} (expected verbatim or corrected)")),
        }
    }
}

/// Which construction a spider candidate used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiderCase {
    /// `u ∈ S` of a thin spider; the flag records `R = ∅`.
    ThinS {
        head_empty: bool,
    },
    ThinK,
    /// `u ∈ R` of a thin spider: `u` made universal in `R`.
    ThinRUniversal,
    /// `u ∈ R` of a thin spider: `w` joined to `K`, recursion on `R`.
    ThinRRecurse,
    /// `u ∈ S` of a thick spider; `row` indexes the five table rows in order.
    ThickS {
        row: u8,
    },
    ThickK,
    ThickR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    SplitFormula,
    /// `level` is `ℓ`; `-1` is the candidate where `w` sees only `u`.
    ThresholdAttach {
        level: isize,
        mode: Mode,
    },
    QtAttach {
        level: isize,
        mode: Mode,
    },
    Formation1,
    Formation2 {
        i: usize,
    },
    NewP4 {
        i: usize,
        a: usize,
        b: usize,
    },
    SpiderAtParent(SpiderCase),
    ThinAncestorR {
        i: usize,
    },
}

impl CandidateKind {
    /// Short name without indices, for win histograms.
    pub fn family(&self) -> &'static str {
        match self {
            CandidateKind::SplitFormula => "split",
            CandidateKind::ThresholdAttach { level: -1, .. } => "threshold-attach-w-only",
            CandidateKind::ThresholdAttach { .. } => "threshold-attach",
            CandidateKind::QtAttach { level: -1, .. } => "qt-attach-w-only",
            CandidateKind::QtAttach { .. } => "qt-attach",
            CandidateKind::Formation1 => "formation1",
            CandidateKind::Formation2 { .. } => "formation2",
            CandidateKind::NewP4 { .. } => "new-p4",
            CandidateKind::SpiderAtParent(SpiderCase::ThinS { .. }) => "spider-thin-s",
            CandidateKind::SpiderAtParent(SpiderCase::ThinK) => "spider-thin-k",
            CandidateKind::SpiderAtParent(SpiderCase::ThinRUniversal) => "spider-thin-r-universal",
            CandidateKind::SpiderAtParent(SpiderCase::ThinRRecurse) => "spider-thin-r-recurse",
            CandidateKind::SpiderAtParent(SpiderCase::ThickS { .. }) => "spider-thick-s",
            CandidateKind::SpiderAtParent(SpiderCase::ThickK) => "spider-thick-k",
            CandidateKind::SpiderAtParent(SpiderCase::ThickR) => "spider-thick-r",
            CandidateKind::ThinAncestorR { .. } => "thin-ancestor-r",
        }
    }
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateKind::ThresholdAttach { level, mode } | CandidateKind::QtAttach { level, mode } => {
                write!(f, "{}(l={level}, {mode})", self.family())
            }
            CandidateKind::Formation2 { i } | CandidateKind::ThinAncestorR { i } => write!(f, "{}(i={i})", self.family()),
            CandidateKind::NewP4 { i, a, b } => write!(f, "{}(i={i}, a={a}, b={b})", self.family()),
            CandidateKind::SpiderAtParent(SpiderCase::ThickS { row }) => write!(f, "{}(row={row})", self.family()),
            _ => f.write_str(self.family()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub cost: usize,
    /// Sorted, each pair `(min, max)`.
    pub fills: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionResult {
    pub fill_count: usize,
    /// The winner's fill edges, sorted. In verbatim mode the count is the
    /// formula value and can exceed the number of edges listed here.
    pub fill_edges: Vec<Edge>,
    pub winner: CandidateKind,
    /// Every candidate considered, in tie-breaking order, with its cost.
    pub all_candidates: Vec<(CandidateKind, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error("structure does not describe the given graph")]
    StructureMismatch,
    #[error("vertex {0} is not part of the spider")]
    NotInSpider(usize),
    #[error("internal error: the {class} completion {fills:?} failed verification")]
    VerificationFailed { class: GraphClass, fills: Vec<Edge> },
}

/// Recognizes `g` as a member of `class` and runs its completion algorithm.
pub fn solve(g: &Graph, class: GraphClass, u: usize, mode: Mode) -> Result<CompletionResult, TailError> {
    g.check_vertex(u)?;
    match class {
        GraphClass::Split => split_tail(g, &split_partition(g)?, u),
        GraphClass::Threshold => threshold_tail(&threshold_tree(g)?, u, mode),
        GraphClass::Qt => qt_tail(&qt_tree(g)?, u, mode),
        GraphClass::P4Sparse => p4_tail(g, &p4_sparse_tree(g)?, u),
    }
}

/// Normalizes and sorts a fill set. Large sets use a radix sort so the
/// completion stays linear.
pub(crate) fn normalize(mut fills: Vec<Edge>) -> Vec<Edge> {
    for e in fills.iter_mut() {
        *e = edge(e.0, e.1);
    }
    if fills.len() < 64 {
        fills.sort_unstable();
        return fills;
    }
    radix_sort(fills)
}

/// LSD radix sort on `(a, b)` packed into one word, 11 bits per pass. A
/// digit shared by every edge is skipped; fills mostly share an endpoint.
fn radix_sort(fills: Vec<Edge>) -> Vec<Edge> {
    const BITS: u32 = 11;
    const MASK: u64 = (1 << BITS) - 1;
    let mut src: Vec<u64> = fills.iter().map(|&(a, b)| ((a as u64) << 32) | b as u64).collect();
    let mut dst = vec![0u64; src.len()];
    let mut count = vec![0usize; 1 << BITS];
    let max = src.iter().fold(0, |m, &k| m | k);
    let width = |half: u64| u64::BITS - half.leading_zeros();
    let shifts = (0..width(max & u32::MAX as u64)).step_by(BITS as usize).chain((32..32 + width(max >> 32)).step_by(BITS as usize));
    for shift in shifts {
        let digit = |k: u64| ((k >> shift) & MASK) as usize;
        count.fill(0);
        for &k in &src {
            count[digit(k)] += 1;
        }
        if count[digit(src[0])] == src.len() {
            continue;
        }
        let mut sum = 0;
        for c in count.iter_mut() {
            (*c, sum) = (sum, sum + *c);
        }
        for &k in &src {
            let d = digit(k);
            dst[count[d]] = k;
            count[d] += 1;
        }
        std::mem::swap(&mut src, &mut dst);
    }
    src.into_iter().map(|k| ((k >> 32) as usize, (k & u32::MAX as u64) as usize)).collect()
}

/// Picks the first candidate of minimum cost.
pub(crate) fn pick(costs: &[(CandidateKind, usize)]) -> usize {
    let mut best = 0;
    for (i, c) in costs.iter().enumerate() {
        if c.1 < costs[best].1 {
            best = i;
        }
    }
    best
}

/// Instances up to this many vertices are verified with the definitional
/// test, larger ones with the class recognizer.
const DEFINITIONAL_VERIFY: usize = 16;

/// Checks that `G + uw + fills` is in the class and that no fill repeats an
/// edge of `G` or the tail.
pub fn verify_completion(g: &Graph, class: GraphClass, u: usize, fills: &[Edge]) -> Result<(), TailError> {
    let w = g.n();
    let failed = || TailError::VerificationFailed { class, fills: fills.to_vec() };
    let mut extra = Vec::with_capacity(fills.len() + 1);
    extra.push((u, w));
    extra.extend_from_slice(fills);
    let h = g.with_additions(1, extra).map_err(|_| failed())?;
    let ok = if h.n() <= DEFINITIONAL_VERIFY {
        is_member(&h, class)
    } else {
        match class {
            GraphClass::Split => split_partition(&h).is_ok(),
            GraphClass::Threshold => threshold_tree(&h).is_ok(),
            GraphClass::Qt => qt_tree(&h).is_ok(),
            GraphClass::P4Sparse => p4_sparse_tree(&h).is_ok(),
        }
    };
    if ok {
        Ok(())
    } else {
        Err(failed())
    }
}

pub(crate) fn finish(costs: Vec<(CandidateKind, usize)>, fills_for: impl FnOnce(CandidateKind) -> Vec<Edge>) -> CompletionResult {
    let best = pick(&costs);
    let (winner, fill_count) = costs[best];
    CompletionResult { fill_count, fill_edges: normalize(fills_for(winner)), winner, all_candidates: costs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_matches_plain_sort() {
        let mut rng = crate::generate::SplitMix64::new(4);
        for (len, n) in [(0, 40), (5, 40), (63, 40), (64, 40), (500, 40), (5000, 3000), (5000, 1 << 25)] {
            let fills: Vec<Edge> = (0..len)
                .map(|_| {
                    // Half the edges share an endpoint, as fill sets do.
                    let a = if rng.chance(0.5) { 7 } else { rng.below(n) };
                    (a, (a + 1 + rng.below(n - 1)) % n)
                })
                .collect();
            let mut expect: Vec<Edge> = fills.iter().map(|&(a, b)| edge(a, b)).collect();
            expect.sort_unstable();
            assert_eq!(normalize(fills), expect);
        }
    }

    #[test]
    fn mode_round_trip() {
        for m in [Mode::Verbatim, Mode::Corrected] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("loose".parse::<Mode>().is_err());
        assert_eq!(Mode::default(), Mode::Corrected);
    }

    #[test]
    fn first_minimum_wins() {
        let costs = [(CandidateKind::Formation1, 2), (CandidateKind::Formation2 { i: 0 }, 1), (CandidateKind::Formation2 { i: 1 }, 1)];
        assert_eq!(pick(&costs), 1);
    }

    #[test]
    fn solve_rejects_non_members_and_bad_ids() {
        assert!(matches!(solve(&Graph::path(4), GraphClass::Qt, 0, Mode::Corrected), Err(TailError::Recognize(_))));
        assert!(matches!(solve(&Graph::path(3), GraphClass::Qt, 3, Mode::Corrected), Err(TailError::Graph(_))));
    }
}
