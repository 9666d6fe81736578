//! Induced occurrences of the small fixed graphs that characterize the
//! classes handled by this crate.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    P3,
    P4,
    C4,
    C5,
    P5,
    TwoK2,
}

impl PatternKind {
    pub const ALL: [PatternKind; 6] =
        [PatternKind::P3, PatternKind::P4, PatternKind::C4, PatternKind::C5, PatternKind::P5, PatternKind::TwoK2];

    pub fn order(self) -> usize {
        match self {
            PatternKind::P3 => 3,
            PatternKind::P4 | PatternKind::C4 | PatternKind::TwoK2 => 4,
            PatternKind::C5 | PatternKind::P5 => 5,
        }
    }

    /// Pattern edges over positions `0..order()`. Occurrences are reported in
    /// this position order: along the path, around the cycle, or as
    /// `(a, b, c, d)` with edges `ab` and `cd`.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternKind::P3 => &[(0, 1), (1, 2)],
            PatternKind::P4 => &[(0, 1), (1, 2), (2, 3)],
            PatternKind::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            PatternKind::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            PatternKind::P5 => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            PatternKind::TwoK2 => &[(0, 1), (2, 3)],
        }
    }

    pub fn graph(self) -> Graph {
        Graph::new(self.order(), self.edges().iter().copied()).expect("pattern graphs are simple")
    }

    fn adjacent(self, i: usize, j: usize) -> bool {
        self.edges().iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternKind::P3 => "P3",
            PatternKind::P4 => "P4",
            PatternKind::C4 => "C4",
            PatternKind::C5 => "C5",
            PatternKind::P5 => "P5",
            PatternKind::TwoK2 => "2K2",
        };
        f.write_str(s)
    }
}

impl FromStr for PatternKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternKind::ALL.into_iter().find(|k| k.to_string().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown pattern {s:?}"))
    }
}

/// An induced occurrence of a pattern, vertices in pattern position order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub kind: PatternKind,
    pub vertices: Vec<usize>,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Finds one induced occurrence of `kind`, or `None` if `G` has none.
///
/// Backtracking over pattern positions; a position with an already placed
/// pattern neighbour only draws candidates from that vertex's adjacency,
/// and candidates whose degree is below the pattern degree are skipped.
pub fn find_induced(g: &Graph, kind: PatternKind) -> Option<Occurrence> {
    let k = kind.order();
    if g.n() < k {
        return None;
    }
    let pattern_degree: Vec<usize> = (0..k).map(|i| (0..k).filter(|&j| j != i && kind.adjacent(i, j)).count()).collect();
    // For each position, the earliest earlier position adjacent to it.
    let anchor: Vec<Option<usize>> = (0..k).map(|i| (0..i).find(|&j| kind.adjacent(i, j))).collect();
    let mut placed = Vec::with_capacity(k);
    if extend(g, kind, &pattern_degree, &anchor, &mut placed) {
        Some(Occurrence { kind, vertices: placed })
    } else {
        None
    }
}

fn extend(g: &Graph, kind: PatternKind, pdeg: &[usize], anchor: &[Option<usize>], placed: &mut Vec<usize>) -> bool {
    let pos = placed.len();
    if pos == kind.order() {
        return true;
    }
    let candidates: Box<dyn Iterator<Item = usize> + '_> = match anchor[pos] {
        Some(a) => Box::new(g.neighbors(placed[a]).to_vec().into_iter()),
        None => Box::new(0..g.n()),
    };
    for v in candidates {
        if g.degree(v) < pdeg[pos] || placed.contains(&v) {
            continue;
        }
        if placed.iter().enumerate().all(|(j, &x)| g.has_edge(v, x) == kind.adjacent(pos, j)) {
            placed.push(v);
            if extend(g, kind, pdeg, anchor, placed) {
                return true;
            }
            placed.pop();
        }
    }
    false
}

/// `true` if the four vertices induce a P4.
pub fn induces_p4(g: &Graph, four: [usize; 4]) -> bool {
    let mut deg = [0usize; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(four[i], four[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    // Three edges on four vertices with degrees in 1..=2 is exactly a path.
    edges == 3 && deg.iter().all(|&d| (1..=2).contains(&d))
}

/// Number of 4-subsets of the 5-set `set` that induce a P4.
pub fn count_induced_p4_in_5set(g: &Graph, set: &[usize]) -> Result<usize, PatternError> {
    if set.len() != 5 {
        return Err(PatternError::WrongSetSize { expected: 5, found: set.len() });
    }
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PatternError::RepeatedVertex);
    }
    Ok((0..5)
        .filter(|&skip| {
            let mut four = [0; 4];
            let mut it = (0..5).filter(|&i| i != skip).map(|i| set[i]);
            four.iter_mut().for_each(|slot| *slot = it.next().unwrap());
            induces_p4(g, four)
        })
        .count())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("expected a set of {expected} vertices, got {found}")]
    WrongSetSize { expected: usize, found: usize },
    #[error("vertex set contains a repeated vertex")]
    RepeatedVertex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_with_pendant() -> Graph {
        // center 0, leaves 1 2 3, pendant 4 on leaf 1
        Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap()
    }

    fn is_induced_occurrence(g: &Graph, occ: &Occurrence) -> bool {
        let k = occ.kind.order();
        occ.vertices.len() == k
            && (0..k).all(|i| (i + 1..k).all(|j| g.has_edge(occ.vertices[i], occ.vertices[j]) == occ.kind.adjacent(i, j)))
    }

    #[test]
    fn path_is_its_own_p4() {
        let occ = find_induced(&Graph::path(4), PatternKind::P4).unwrap();
        assert_eq!(occ.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn complete_graph_has_no_c4() {
        assert_eq!(find_induced(&Graph::complete(4), PatternKind::C4), None);
    }

    #[test]
    fn star_plus_pendant_has_p4() {
        let g = star_with_pendant();
        let occ = find_induced(&g, PatternKind::P4).unwrap();
        assert!(is_induced_occurrence(&g, &occ));
    }

    #[test]
    fn two_k2_found() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let occ = find_induced(&g, PatternKind::TwoK2).unwrap();
        assert!(is_induced_occurrence(&g, &occ));
    }

    #[test]
    fn p4_counts_in_five_sets() {
        assert_eq!(count_induced_p4_in_5set(&Graph::cycle(5), &[0, 1, 2, 3, 4]), Ok(5));
        assert_eq!(count_induced_p4_in_5set(&Graph::complete(5), &[0, 1, 2, 3, 4]), Ok(0));
        assert_eq!(count_induced_p4_in_5set(&star_with_pendant(), &[0, 1, 2, 3, 4]), Ok(2));
        assert!(count_induced_p4_in_5set(&Graph::complete(5), &[0, 1, 2, 3]).is_err());
        assert!(count_induced_p4_in_5set(&Graph::complete(5), &[0, 1, 2, 3, 3]).is_err());
    }

    #[test]
    fn pattern_names_parse() {
        for k in PatternKind::ALL {
            assert_eq!(k.to_string().parse::<PatternKind>(), Ok(k));
        }
    }
}
