use std::fmt::Write as _;

use crate::graph::{Graph, GraphError};
use crate::pattern::{find_induced, PatternKind};

use super::path::PathPartition;
use super::RecognizeError;

const NONE: usize = usize::MAX;

/// Unvalidated bag tree, assembled bottom-up or top-down.
#[derive(Debug, Clone, Default)]
pub struct QtBuilder {
    bags: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl QtBuilder {
    pub fn push(&mut self, bag: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.children.push(Vec::new());
        self.bags.len() - 1
    }

    pub fn link(&mut self, parent: usize, child: usize) {
        self.children[parent].push(child);
    }

    pub fn node(&mut self, bag: Vec<usize>, kids: Vec<usize>) -> usize {
        let id = self.push(bag);
        self.children[id] = kids;
        id
    }

    /// Validates canonical shape and lays the tree out: nodes renumbered in
    /// preorder, children ordered by smallest vertex, each subtree's
    /// vertices contiguous in `order()` with the bag first.
    pub fn finish(self, root: usize, n: usize) -> Result<QtTree, RecognizeError> {
        let bad = |msg: String| Err(RecognizeError::InvalidStructure(msg));
        let count = self.bags.len();
        if root >= count {
            return bad(format!("root {root} does not exist"));
        }
        // Reachability and single parent.
        let mut seen = vec![false; count];
        let mut post = Vec::with_capacity(count);
        let mut stack = vec![(root, false)];
        while let Some((t, done)) = stack.pop() {
            if done {
                post.push(t);
                continue;
            }
            if seen[t] {
                return bad(format!("node {t} reached twice"));
            }
            seen[t] = true;
            stack.push((t, true));
            for &c in &self.children[t] {
                if c >= count {
                    return bad(format!("child {c} does not exist"));
                }
                stack.push((c, false));
            }
        }
        let mut min_vertex = vec![NONE; count];
        for &t in &post {
            let own = self.bags[t].iter().copied().min().unwrap_or(NONE);
            min_vertex[t] = self.children[t].iter().map(|&c| min_vertex[c]).fold(own, usize::min);
        }
        for &t in &post {
            let kids = self.children[t].len();
            if t != root && self.bags[t].is_empty() {
                return bad("empty bag below the root".into());
            }
            if kids == 1 {
                return bad(format!("bag {:?} has a single child", self.bags[t]));
            }
            if t == root && self.bags[t].is_empty() && kids == 0 && n > 0 {
                return bad("empty root".into());
            }
        }

        let mut tree = QtTree {
            bag: Vec::with_capacity(post.len()),
            children: Vec::with_capacity(post.len()),
            parent: Vec::with_capacity(post.len()),
            range: Vec::with_capacity(post.len()),
            node_of: vec![NONE; n],
            order: Vec::with_capacity(n),
            position: vec![NONE; n],
        };
        // Preorder layout; `range` end filled in on exit.
        let mut stack = vec![(root, NONE, false, NONE)];
        while let Some((old, parent, done, new)) = stack.pop() {
            if done {
                tree.range[new].1 = tree.order.len();
                continue;
            }
            let id = tree.bag.len();
            let mut bag = self.bags[old].clone();
            bag.sort_unstable();
            for &v in &bag {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
                }
                if tree.node_of[v] != NONE {
                    return bad(format!("vertex {v} appears twice"));
                }
                tree.node_of[v] = id;
                tree.position[v] = tree.order.len();
                tree.order.push(v);
            }
            tree.range.push((tree.order.len() - bag.len(), NONE));
            tree.bag.push(bag);
            tree.children.push(Vec::new());
            tree.parent.push(parent);
            if parent != NONE {
                tree.children[parent].push(id);
            }
            stack.push((old, parent, true, id));
            let mut kids = self.children[old].clone();
            kids.sort_by_key(|&c| std::cmp::Reverse(min_vertex[c]));
            stack.extend(kids.into_iter().map(|c| (c, id, false, NONE)));
        }
        if let Some(v) = tree.node_of.iter().position(|&t| t == NONE) {
            return bad(format!("vertex {v} missing"));
        }
        Ok(tree)
    }
}

/// Canonical rooted bag tree: each bag is the set of vertices universal in
/// its own subtree, and two vertices are adjacent iff one's bag is an
/// ancestor of (or equal to) the other's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QtTree {
    bag: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    parent: Vec<usize>,
    range: Vec<(usize, usize)>,
    node_of: Vec<usize>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl QtTree {
    pub fn n(&self) -> usize {
        self.node_of.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node_count(&self) -> usize {
        self.bag.len()
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bag[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        (self.parent[t] != NONE).then_some(self.parent[t])
    }

    pub fn node_of(&self, v: usize) -> Result<usize, GraphError> {
        self.node_of.get(v).copied().ok_or(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
    }

    /// Vertices in preorder, each bag before its descendants.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Vertices of the subtree rooted at `t`.
    pub fn subtree(&self, t: usize) -> &[usize] {
        let (lo, hi) = self.range[t];
        &self.order[lo..hi]
    }

    /// Root-to-`t` node list.
    pub fn path_to(&self, mut t: usize) -> Vec<usize> {
        let mut path = vec![t];
        while self.parent[t] != NONE {
            t = self.parent[t];
            path.push(t);
        }
        path.reverse();
        path
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        let (ta, tb) = (self.node_of[a], self.node_of[b]);
        let inside = |t: usize, v: usize| {
            let (lo, hi) = self.range[t];
            (lo..hi).contains(&self.position[v])
        };
        inside(ta, b) || inside(tb, a)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.node_count())
            .map(|t| {
                let (lo, hi) = self.range[t];
                (lo..lo + self.bag[t].len()).map(|p| hi - p - 1).sum::<usize>()
            })
            .sum()
    }

    pub fn expand(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for t in 0..self.node_count() {
            let (lo, hi) = self.range[t];
            for p in lo..lo + self.bag[t].len() {
                let a = self.order[p];
                edges.extend(self.order[p + 1..hi].iter().map(|&b| (a.min(b), a.max(b))));
            }
        }
        Graph::new(self.n(), edges).expect("bag tree yields a simple graph")
    }

    /// `true` iff the tree expands to exactly `G`, in `O(n + m)`.
    pub fn matches(&self, g: &Graph) -> bool {
        g.n() == self.n() && g.m() == self.edge_count() && g.edges().all(|(a, b)| self.comparable(a, b))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root(), false)];
        while let Some((t, done)) = stack.pop() {
            if done {
                out.push(')');
                continue;
            }
            if !out.is_empty() && !out.ends_with('(') {
                out.push(' ');
            }
            let _ = write!(out, "({}", super::fmt_ids(&self.bag[t]));
            stack.push((t, true));
            stack.extend(self.children[t].iter().rev().map(|&c| (c, false)));
        }
        out
    }

    /// Path from the root to the bag holding `u`. Level `s < i` holds the
    /// bag `B_s` and the subtrees hanging off the path below it; level `i`
    /// holds the rest of `u`'s own subtree. `u` sees every bag above it and
    /// everything in its own subtree, and nothing else.
    pub fn path_partition(&self, u: usize) -> Result<PathPartition<'_>, GraphError> {
        let t = self.node_of(u)?;
        let nodes = self.path_to(t);
        let mut bounds: Vec<(usize, usize)> = nodes.iter().map(|&x| self.range[x]).collect();
        bounds.push((self.position[u], self.position[u] + 1));
        let last = nodes.len() - 1;
        let adjacent = nodes
            .iter()
            .enumerate()
            .map(|(s, &x)| if s < last { self.bag[x].len() } else { self.range[x].1 - self.range[x].0 - 1 })
            .collect();
        Ok(PathPartition::new(&self.order, nodes, bounds, adjacent))
    }
}

/// Orders vertices by degree (high first); each vertex hangs under its
/// latest earlier neighbour. The graph is quasi-threshold iff every edge
/// joins a vertex to one of its ancestors and every vertex sees all of its
/// ancestors. Chains of single-child vertices then merge into bags.
pub fn qt_tree(g: &Graph) -> Result<QtTree, RecognizeError> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut parent = vec![NONE; n];
    let mut earlier = vec![0usize; n];
    for v in 0..n {
        for &x in g.neighbors(v) {
            if pos[x] < pos[v] {
                earlier[v] += 1;
                if parent[v] == NONE || pos[x] > pos[parent[v]] {
                    parent[v] = x;
                }
            }
        }
    }
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for &v in &order {
        match parent[v] {
            NONE => roots.push(v),
            p => kids[p].push(v),
        }
    }
    // Preorder intervals and depths of the vertex forest.
    let mut enter = vec![0; n];
    let mut exit = vec![0; n];
    let mut depth = vec![0; n];
    let mut clock = 0;
    let mut stack: Vec<(usize, bool)> = roots.iter().rev().map(|&r| (r, false)).collect();
    while let Some((v, done)) = stack.pop() {
        if done {
            exit[v] = clock;
            continue;
        }
        enter[v] = clock;
        clock += 1;
        stack.push((v, true));
        for &c in kids[v].iter().rev() {
            depth[c] = depth[v] + 1;
            stack.push((c, false));
        }
    }
    let ancestor = |a: usize, b: usize| enter[a] <= enter[b] && exit[b] <= exit[a];
    let consistent =
        (0..n).all(|v| earlier[v] == depth[v]) && g.edges().all(|(a, b)| if pos[a] < pos[b] { ancestor(a, b) } else { ancestor(b, a) });
    if !consistent {
        for kind in [PatternKind::C4, PatternKind::P4] {
            if let Some(occ) = find_induced(g, kind) {
                return Err(RecognizeError::NotQt(occ));
            }
        }
        unreachable!("ancestor forest check failed on a graph without C4 or P4");
    }

    let mut b = QtBuilder::default();
    let mut bag_of = vec![NONE; n];
    let mut top = Vec::new();
    // `order` is a valid top-down order: parents precede children.
    for &v in &order {
        let p = parent[v];
        if p != NONE && kids[p].len() == 1 {
            bag_of[v] = bag_of[p];
            b.bags[bag_of[v]].push(v);
        } else {
            let id = b.push(vec![v]);
            bag_of[v] = id;
            if p == NONE {
                top.push(id);
            } else {
                b.link(bag_of[p], id);
            }
        }
    }
    let root = match top.len() {
        1 => top[0],
        _ => b.node(Vec::new(), top),
    };
    b.finish(root, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_single_bag() {
        let t = qt_tree(&Graph::complete(2)).unwrap();
        assert_eq!(t.serialize(), "({0 1})");
        assert_eq!(t.node_count(), 1);
    }

    #[test]
    fn triangle_with_pendant() {
        // a=0, b=1, c=2, d=3 pendant on a
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let t = qt_tree(&g).unwrap();
        assert_eq!(t.serialize(), "({0} ({1 2}) ({3}))");
        assert_eq!(t.expand(), g);
    }

    #[test]
    fn p4_and_c4_rejected() {
        match qt_tree(&Graph::path(4)) {
            Err(RecognizeError::NotQt(occ)) => assert_eq!(occ.kind, PatternKind::P4),
            other => panic!("unexpected {other:?}"),
        }
        match qt_tree(&Graph::cycle(4)) {
            Err(RecognizeError::NotQt(occ)) => assert_eq!(occ.kind, PatternKind::C4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disconnected_gets_empty_root() {
        let g = Graph::new(5, [(0, 1), (3, 4), (2, 3), (2, 4)]).unwrap();
        let t = qt_tree(&g).unwrap();
        assert_eq!(t.serialize(), "({} ({0 1}) ({2 3 4}))");
        assert_eq!(t.expand(), g);
        let e = qt_tree(&Graph::empty(0)).unwrap();
        assert_eq!(e.serialize(), "({})");
    }

    #[test]
    fn path_partition_levels() {
        // root {0}, children {1} (with leaves 2, 3) and {4}
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3)]).unwrap();
        let t = qt_tree(&g).unwrap();
        assert_eq!(t.serialize(), "({0} ({1} ({2}) ({3})) ({4}))");
        let pp = t.path_partition(2).unwrap();
        assert_eq!(pp.h(), 2);
        let mut levels: Vec<Vec<usize>> = (0..=pp.h()).map(|i| pp.vertices(i).collect()).collect();
        levels.iter_mut().for_each(|l| l.sort_unstable());
        assert_eq!(levels, vec![vec![0, 4], vec![1, 3], vec![]]);
        assert_eq!(pp.above_adjacent(2), 2);
        assert_eq!(pp.below_non_adjacent(0), 2);
    }

    #[test]
    fn builder_rejects_single_child() {
        let mut b = QtBuilder::default();
        let c = b.node(vec![1], vec![]);
        let r = b.node(vec![0], vec![c]);
        assert!(b.finish(r, 2).is_err());
    }
}
