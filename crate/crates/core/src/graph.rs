//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

/// An unordered vertex pair, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// Returns the pair in canonical `(min, max)` order.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph. Adjacency lists are sorted; the value never
/// changes after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut m2 = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(edge(v, w[0])));
            }
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    /// Like [`Graph::new`] but silently merges duplicate pairs.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut all: Vec<Edge> = edges.into_iter().map(|(a, b)| edge(a, b)).collect();
        all.sort_unstable();
        all.dedup();
        Graph::new(n, all)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::new(n, (0..n).map(|v| edge(v, (v + 1) % n))).expect("cycle is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (small, other) = if self.adj[a].len() <= self.adj[b].len() { (a, b) } else { (b, a) };
        self.adj[small].binary_search(&other).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Non-adjacent pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n()).flat_map(move |a| (a + 1..self.n()).filter(move |&b| !self.has_edge(a, b)).map(move |b| (a, b)))
    }

    /// `true` when `v` is adjacent to every other vertex.
    pub fn is_universal(&self, v: usize) -> bool {
        self.degree(v) + 1 == self.n()
    }

    /// Returns this graph with extra vertices and edges appended.
    pub fn with_additions(&self, extra_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        Graph::new(self.n() + extra_vertices, self.edges().chain(edges))
    }

    /// `G + uw`: a fresh vertex `w = n` joined to `u` only.
    pub fn add_tail(&self, u: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        let w = self.n();
        self.with_additions(1, [(u, w)])
    }

    /// The subgraph induced by `set`. The returned map sends new ids to old
    /// ones: `map[i]` is the original id of vertex `i`.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut index = vec![usize::MAX; self.n()];
        let mut map = Vec::with_capacity(set.len());
        for &v in set {
            self.check_vertex(v)?;
            if index[v] == usize::MAX {
                index[v] = map.len();
                map.push(v);
            }
        }
        let mut adj = vec![Vec::new(); map.len()];
        let mut m2 = 0;
        for (i, &v) in map.iter().enumerate() {
            let list: Vec<usize> = self.adj[v].iter().map(|&x| index[x]).filter(|&i| i != usize::MAX).collect();
            m2 += list.len();
            adj[i] = list;
            adj[i].sort_unstable();
        }
        Ok((Graph { adj, m: m2 / 2 }, map))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        let mut m2 = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            let mut it = self.adj[v].iter().peekable();
            for x in 0..n {
                if x == v {
                    continue;
                }
                if it.peek() == Some(&&x) {
                    it.next();
                } else {
                    list.push(x);
                }
            }
            m2 += list.len();
        }
        Graph { adj, m: m2 / 2 }
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n()).collect();
        components_within(self, &all, false)
    }

    /// Serializes into the plain text graph format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    /// Parses the plain text graph format: optional `#` comments, a header
    /// `n m`, then `m` lines `a b` with `a < b < n`.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse { line: 0, msg: "missing header line".into() })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let (a, b) = parse_pair(line, text)?;
            if a >= b {
                return Err(GraphError::Parse { line, msg: format!("expected a < b, got {a} {b}") });
            }
            if b >= n {
                return Err(GraphError::Parse { line, msg: format!("vertex {b} out of range (n = {n})") });
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(GraphError::Parse { line: hline, msg: format!("header announces {m} edges, found {}", edges.len()) });
        }
        Graph::new(n, edges).map_err(|e| GraphError::Parse { line: hline, msg: e.to_string() })
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse { line, msg: "expected two integers".into() })?;
        tok.parse().map_err(|_| GraphError::Parse { line, msg: format!("not a non-negative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

/// Components of `G[set]` (or of its complement when `complement` is set),
/// each sorted, ordered by smallest vertex. Runs in `O(|set| + edges touched)`
/// for both variants.
pub(crate) fn components_within(g: &Graph, set: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut comps = Vec::new();
    if complement {
        // BFS over the complement, keeping the unvisited vertices in a list
        // and scanning each popped vertex's adjacency once.
        let mut mark = std::collections::HashSet::new();
        let mut unvisited: Vec<usize> = sorted.clone();
        unvisited.reverse();
        while let Some(start) = unvisited.pop() {
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                mark.clear();
                mark.extend(g.neighbors(v).iter().copied());
                let mut keep = Vec::with_capacity(unvisited.len());
                for &x in &unvisited {
                    if mark.contains(&x) {
                        keep.push(x);
                    } else {
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
                unvisited = keep;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
    } else {
        let inside: std::collections::HashSet<usize> = sorted.iter().copied().collect();
        let mut seen = std::collections::HashSet::with_capacity(sorted.len());
        for &s in &sorted {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &x in g.neighbors(v) {
                    if inside.contains(&x) && seen.insert(x) {
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge((0, 1))));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn induced_subgraph_of_c4_is_p3() {
        let c4 = Graph::cycle(4);
        let (h, map) = c4.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(h, Graph::path(3));
        let (e, map) = c4.induced_subgraph(&[]).unwrap();
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());
        assert!(c4.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let g = Graph::new(5, [(3, 4), (0, 2), (1, 2)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "5 3\n0 2\n1 2\n3 4\n");
        assert_eq!(Graph::parse(&format!("# comment\n{text}")).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(Graph::parse("").is_err());
        assert!(Graph::parse("3 1\n2 1\n").is_err());
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("3 1\n0 3\n").is_err());
        assert!(Graph::parse("3 2\n0 1\n0 1\n").is_err());
        assert!(Graph::parse("3 1\n0 x\n").is_err());
    }

    #[test]
    fn complement_components() {
        // 2K2: complement is C4, connected.
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        let all = [0, 1, 2, 3];
        assert_eq!(components_within(&g, &all, true), vec![vec![0, 1, 2, 3]]);
        // K_{1,3}: complement has the center isolated.
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(components_within(&star, &all, true), vec![vec![0], vec![1, 2, 3]]);
    }
}
