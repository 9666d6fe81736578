use std::fmt::Write as _;

use crate::graph::{components_within, Graph, GraphError};
use crate::oracle::{find_violation, GraphClass};

use super::path::PathPartition;
use super::spider::{spider_partition, SpiderDescriptor, SpiderRole};
use super::RecognizeError;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Leaf(usize),
    /// Disjoint union of the children.
    Zero,
    /// Join of the children.
    One,
    /// Spider; indexes `P4SparseTree::spider_at`.
    Two(usize),
}

/// Spider data of a 2-node. `s` and `k` are vertex ids aligned by pair and
/// sorted by `s`; `r` is the child node holding the head, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpider {
    pub s: Vec<usize>,
    pub k: Vec<usize>,
    pub thin: bool,
    pub r: Option<usize>,
}

impl TreeSpider {
    pub fn role(&self, v: usize) -> SpiderRole {
        if let Some(i) = self.s.iter().position(|&x| x == v) {
            SpiderRole::S(i)
        } else if let Some(i) = self.k.iter().position(|&x| x == v) {
            SpiderRole::K(i)
        } else {
            SpiderRole::R
        }
    }
}

#[derive(Debug, Clone)]
enum BNode {
    Leaf(usize),
    Zero(Vec<usize>),
    One(Vec<usize>),
    Two { s: Vec<usize>, k: Vec<usize>, thin: bool, r: Option<usize> },
}

/// Unvalidated tree, assembled bottom-up: children must exist before
/// their parent is added.
#[derive(Debug, Clone, Default)]
pub struct TreeBuilder {
    nodes: Vec<BNode>,
}

impl TreeBuilder {
    pub fn leaf(&mut self, v: usize) -> usize {
        self.add(BNode::Leaf(v))
    }

    pub fn zero(&mut self, kids: Vec<usize>) -> usize {
        self.add(BNode::Zero(kids))
    }

    pub fn one(&mut self, kids: Vec<usize>) -> usize {
        self.add(BNode::One(kids))
    }

    /// A 2-node over the vertex lists `s`, `k` (aligned by pair) with an
    /// optional head subtree `r`.
    pub fn spider(&mut self, s: Vec<usize>, k: Vec<usize>, thin: bool, r: Option<usize>) -> usize {
        self.add(BNode::Two { s, k, thin, r })
    }

    fn add(&mut self, node: BNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn kids(&self, t: usize) -> &[usize] {
        match &self.nodes[t] {
            BNode::Leaf(_) => &[],
            BNode::Zero(k) | BNode::One(k) => k,
            BNode::Two { r, .. } => r.as_slice(),
        }
    }

    /// Validates and lays out the tree: preorder node ids, children ordered
    /// by smallest vertex, leaves of every subtree contiguous.
    pub fn finish(self, root: usize, n: usize) -> Result<P4SparseTree, RecognizeError> {
        let bad = |msg: String| Err(RecognizeError::InvalidStructure(msg));
        let count = self.nodes.len();
        if root >= count {
            return bad(format!("root {root} does not exist"));
        }
        if let Some(t) = (0..count).find(|&t| self.kids(t).iter().any(|&c| c >= t)) {
            return bad(format!("node {t} refers to a later node"));
        }
        // Children precede parents, so ascending ids are a valid bottom-up order.
        let mut min_vertex = vec![NONE; count];
        let mut uses = vec![0u32; count];
        for t in 0..count {
            let own = match &self.nodes[t] {
                BNode::Leaf(v) => *v,
                BNode::Two { s, k, .. } => s.iter().chain(k).copied().min().unwrap_or(NONE),
                _ => NONE,
            };
            min_vertex[t] = self.kids(t).iter().map(|&c| min_vertex[c]).fold(own, usize::min);
            for &c in self.kids(t) {
                uses[c] += 1;
            }
        }

        enum Item {
            Node(usize, usize),
            Vertex(usize, usize),
            Exit(usize),
        }
        let mut tree = P4SparseTree {
            label: Vec::with_capacity(2 * n),
            parent: Vec::with_capacity(2 * n),
            child_start: Vec::new(),
            children: Vec::new(),
            range: Vec::with_capacity(2 * n),
            order: Vec::with_capacity(n),
            position: vec![NONE; n],
            leaf: vec![NONE; n],
            spiders: Vec::new(),
        };
        let mut new_id = vec![NONE; count];
        let mut heads: Vec<(usize, usize)> = Vec::new();
        let mut stack = vec![Item::Node(root, NONE)];
        while let Some(item) = stack.pop() {
            let id = tree.label.len();
            let (old, parent) = match item {
                Item::Exit(t) => {
                    tree.range[t].1 = tree.order.len();
                    continue;
                }
                Item::Vertex(v, p) => (NONE, (v, p)),
                Item::Node(old, p) => {
                    if new_id[old] != NONE || uses[old] > 1 {
                        return bad(format!("node {old} has more than one parent"));
                    }
                    new_id[old] = id;
                    match self.nodes[old] {
                        BNode::Leaf(v) => (old, (v, p)),
                        _ => (old, (NONE, p)),
                    }
                }
            };
            let (v, p) = parent;
            tree.parent.push(p);
            if v != NONE {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
                }
                if tree.leaf[v] != NONE {
                    return bad(format!("vertex {v} appears twice"));
                }
                tree.leaf[v] = id;
                tree.position[v] = tree.order.len();
                tree.label.push(NodeLabel::Leaf(v));
                tree.range.push((tree.order.len(), tree.order.len() + 1));
                tree.order.push(v);
                continue;
            }
            tree.range.push((tree.order.len(), NONE));
            stack.push(Item::Exit(id));
            // (smallest vertex, item) pairs, pushed largest first.
            let mut next: Vec<(usize, Item)> = Vec::new();
            match &self.nodes[old] {
                BNode::Leaf(_) => unreachable!(),
                BNode::Zero(kids) | BNode::One(kids) => {
                    let zero = matches!(self.nodes[old], BNode::Zero(_));
                    tree.label.push(if zero { NodeLabel::Zero } else { NodeLabel::One });
                    next.extend(kids.iter().map(|&c| (min_vertex[c], Item::Node(c, id))));
                }
                BNode::Two { s, k, thin, r } => {
                    let spider = SpiderDescriptor { s: s.clone(), k: k.clone(), thin: *thin, r: Vec::new() }.canonical();
                    tree.label.push(NodeLabel::Two(tree.spiders.len()));
                    next.extend(spider.s.iter().chain(&spider.k).map(|&v| (v, Item::Vertex(v, id))));
                    if let Some(c) = *r {
                        next.push((min_vertex[c], Item::Node(c, id)));
                        heads.push((tree.spiders.len(), c));
                    }
                    tree.spiders.push(TreeSpider { s: spider.s, k: spider.k, thin: spider.thin, r: None });
                }
            }
            next.sort_by_key(|&(m, _)| std::cmp::Reverse(m));
            stack.extend(next.into_iter().map(|(_, item)| item));
        }
        if let Some(v) = tree.leaf.iter().position(|&t| t == NONE) {
            return bad(format!("vertex {v} missing"));
        }
        for (si, old) in heads {
            tree.spiders[si].r = Some(new_id[old]);
        }
        tree.build_children();
        tree.validate()?;
        Ok(tree)
    }
}

/// Decomposition tree of a P4-sparse graph: two vertices are adjacent iff
/// their lowest common ancestor is a 1-node, or a 2-node whose spider joins
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P4SparseTree {
    label: Vec<NodeLabel>,
    parent: Vec<usize>,
    child_start: Vec<usize>,
    children: Vec<usize>,
    range: Vec<(usize, usize)>,
    order: Vec<usize>,
    position: Vec<usize>,
    leaf: Vec<usize>,
    spiders: Vec<TreeSpider>,
}

impl P4SparseTree {
    fn build_children(&mut self) {
        let count = self.label.len();
        let mut start = vec![0usize; count + 1];
        for &p in &self.parent {
            if p != NONE {
                start[p + 1] += 1;
            }
        }
        for t in 0..count {
            start[t + 1] += start[t];
        }
        let mut cursor = start.clone();
        let mut children = vec![0; count.saturating_sub(1)];
        // Ids are preorder, so each parent's children arrive in layout order.
        for (c, &p) in self.parent.iter().enumerate() {
            if p != NONE {
                children[cursor[p]] = c;
                cursor[p] += 1;
            }
        }
        self.child_start = start;
        self.children = children;
    }

    fn validate(&self) -> Result<(), RecognizeError> {
        let bad = |msg: String| Err(RecognizeError::InvalidStructure(msg));
        for t in 0..self.label.len() {
            let kids = self.children(t);
            let p = self.parent(t);
            match self.label[t] {
                NodeLabel::Leaf(_) => continue,
                NodeLabel::Zero | NodeLabel::One if kids.len() < 2 => {
                    return bad(format!("node {t} has fewer than two children"));
                }
                NodeLabel::Zero | NodeLabel::One => {
                    if p.is_some_and(|p| self.label[p] == self.label[t]) {
                        return bad(format!("node {t} repeats its parent's label"));
                    }
                }
                NodeLabel::Two(si) => {
                    let sp = &self.spiders[si];
                    if sp.s.len() != sp.k.len() || sp.k.len() < 2 {
                        return bad(format!("spider at node {t} has |S| = {}, |K| = {}", sp.s.len(), sp.k.len()));
                    }
                    if !sp.thin && sp.k.len() < 3 {
                        return bad(format!("thick spider at node {t} has |K| < 3"));
                    }
                    if kids.len() != 2 * sp.k.len() + usize::from(sp.r.is_some()) {
                        return bad(format!("spider at node {t} has a stray child"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.leaf.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node_count(&self) -> usize {
        self.label.len()
    }

    pub fn label(&self, t: usize) -> NodeLabel {
        self.label[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        (self.parent[t] != NONE).then_some(self.parent[t])
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[self.child_start[t]..self.child_start[t + 1]]
    }

    pub fn spider_at(&self, t: usize) -> Option<&TreeSpider> {
        match self.label[t] {
            NodeLabel::Two(si) => Some(&self.spiders[si]),
            _ => None,
        }
    }

    pub fn leaf_of(&self, v: usize) -> Result<usize, GraphError> {
        self.leaf.get(v).copied().ok_or(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
    }

    /// Leaves of the subtree at `t`, in layout order.
    pub fn leaves(&self, t: usize) -> &[usize] {
        let (lo, hi) = self.range[t];
        &self.order[lo..hi]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Adjacency by the tree law, in time proportional to the depth.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let inside = |t: usize, v: usize| {
            let (lo, hi) = self.range[t];
            (lo..hi).contains(&self.position[v])
        };
        let mut t = self.leaf[a];
        while !inside(t, b) {
            t = self.parent[t];
        }
        match self.label[t] {
            NodeLabel::Leaf(_) | NodeLabel::Zero => false,
            NodeLabel::One => true,
            NodeLabel::Two(si) => {
                let sp = &self.spiders[si];
                match (sp.role(a), sp.role(b)) {
                    (SpiderRole::S(_), SpiderRole::S(_)) => false,
                    (SpiderRole::K(_), SpiderRole::K(_)) => true,
                    (SpiderRole::S(i), SpiderRole::K(j)) | (SpiderRole::K(j), SpiderRole::S(i)) => (i == j) == sp.thin,
                    (SpiderRole::K(_), SpiderRole::R) | (SpiderRole::R, SpiderRole::K(_)) => true,
                    (SpiderRole::S(_), SpiderRole::R) | (SpiderRole::R, SpiderRole::S(_)) => false,
                    (SpiderRole::R, SpiderRole::R) => unreachable!("two head vertices meet below the spider"),
                }
            }
        }
    }

    pub fn expand(&self) -> Graph {
        let mut edges = Vec::new();
        for t in 0..self.node_count() {
            match self.label[t] {
                NodeLabel::Leaf(_) | NodeLabel::Zero => {}
                NodeLabel::One => {
                    let end = self.range[t].1;
                    for &c in self.children(t) {
                        let (lo, hi) = self.range[c];
                        for &a in &self.order[lo..hi] {
                            edges.extend(self.order[hi..end].iter().map(|&b| (a.min(b), a.max(b))));
                        }
                    }
                }
                NodeLabel::Two(si) => {
                    let sp = &self.spiders[si];
                    for (j, &kj) in sp.k.iter().enumerate() {
                        edges.extend(sp.k[j + 1..].iter().map(|&x| (kj.min(x), kj.max(x))));
                        for (i, &si) in sp.s.iter().enumerate() {
                            if (i == j) == sp.thin {
                                edges.push((kj.min(si), kj.max(si)));
                            }
                        }
                        if let Some(r) = sp.r {
                            edges.extend(self.leaves(r).iter().map(|&x| (kj.min(x), kj.max(x))));
                        }
                    }
                }
            }
        }
        Graph::new(self.n(), edges).expect("tree yields a simple graph")
    }

    pub fn matches(&self, g: &Graph) -> bool {
        g.n() == self.n() && self.expand() == *g
    }

    /// One-line form: a leaf is its vertex id, an internal node is
    /// `(0 …)`, `(1 …)` or `(2 thin|thick [S: …][K: …] …)`.
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
            match self.label[t] {
                NodeLabel::Leaf(v) => {
                    let _ = write!(out, "{v}");
                    continue;
                }
                NodeLabel::Zero => out.push_str("(0"),
                NodeLabel::One => out.push_str("(1"),
                NodeLabel::Two(si) => {
                    let sp = &self.spiders[si];
                    let ids = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                    let kind = if sp.thin { "thin" } else { "thick" };
                    let _ = write!(out, "(2 {kind} [S: {}][K: {}]", ids(&sp.s), ids(&sp.k));
                }
            }
            stack.push((t, true));
            stack.extend(self.children(t).iter().rev().map(|&c| (c, false)));
        }
        out
    }

    /// Path from the root to the parent of `u`'s leaf; level `i` holds the
    /// leaves of every child of `t_i` except the next path node (or `u`).
    pub fn path_partition(&self, u: usize) -> Result<PathPartition<'_>, GraphError> {
        let leaf = self.leaf_of(u)?;
        let mut nodes = Vec::new();
        let mut t = leaf;
        while self.parent[t] != NONE {
            t = self.parent[t];
            nodes.push(t);
        }
        if nodes.is_empty() {
            // A lone vertex: one empty level so the path is never empty.
            nodes.push(leaf);
            let bounds = vec![self.range[leaf], self.range[leaf]];
            return Ok(PathPartition::new(&self.order, nodes, bounds, vec![0]));
        }
        nodes.reverse();
        let mut bounds: Vec<(usize, usize)> = nodes.iter().map(|&x| self.range[x]).collect();
        bounds.push(self.range[leaf]);
        let h = nodes.len() - 1;
        let adjacent = nodes
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let size = (bounds[i].1 - bounds[i].0) - (bounds[i + 1].1 - bounds[i + 1].0);
                match self.label[x] {
                    NodeLabel::Leaf(_) | NodeLabel::Zero => 0,
                    NodeLabel::One => size,
                    NodeLabel::Two(si) => {
                        let sp = &self.spiders[si];
                        let k = sp.k.len();
                        let r = sp.r.map_or(0, |c| self.range[c].1 - self.range[c].0);
                        match (i == h, sp.role(u), sp.thin) {
                            (false, _, _) | (true, SpiderRole::R, _) => k,
                            (true, SpiderRole::S(_), true) => 1,
                            (true, SpiderRole::S(_), false) => k - 1,
                            (true, SpiderRole::K(_), true) => k + r,
                            (true, SpiderRole::K(_), false) => 2 * (k - 1) + r,
                        }
                    }
                }
            })
            .collect();
        Ok(PathPartition::new(&self.order, nodes, bounds, adjacent))
    }
}

enum Plan {
    Leaf(usize),
    Zero(Vec<usize>),
    One(Vec<usize>),
    Two(SpiderDescriptor, Option<usize>),
}

/// Builds the tree top-down: a disconnected set becomes a 0-node over its
/// components, a co-disconnected set a 1-node over its co-components, and
/// anything else must be a spider whose head is decomposed further.
pub fn p4_sparse_tree(g: &Graph) -> Result<P4SparseTree, RecognizeError> {
    let n = g.n();
    if n == 0 {
        return Err(RecognizeError::InvalidStructure("the empty graph has no tree".into()));
    }
    let mut plans: Vec<Option<Plan>> = vec![None];
    let mut work: Vec<(usize, Vec<usize>)> = vec![(0, (0..n).collect())];
    while let Some((id, set)) = work.pop() {
        let mut spawn = |sets: Vec<Vec<usize>>, plans: &mut Vec<Option<Plan>>| -> Vec<usize> {
            sets.into_iter()
                .map(|s| {
                    plans.push(None);
                    work.push((plans.len() - 1, s));
                    plans.len() - 1
                })
                .collect()
        };
        let plan = if set.len() == 1 {
            Plan::Leaf(set[0])
        } else {
            let comps = components_within(g, &set, false);
            if comps.len() > 1 {
                Plan::Zero(spawn(comps, &mut plans))
            } else {
                let cocomps = components_within(g, &set, true);
                if cocomps.len() > 1 {
                    Plan::One(spawn(cocomps, &mut plans))
                } else {
                    let (h, map) = g.induced_subgraph(&set)?;
                    let Some(sp) = spider_partition(&h) else {
                        let five = find_violation(&h, GraphClass::P4Sparse).expect("a connected, co-connected non-spider is not P4-sparse");
                        let mut five: Vec<usize> = five.into_iter().map(|v| map[v]).collect();
                        five.sort_unstable();
                        return Err(RecognizeError::NotP4Sparse(five));
                    };
                    let back = |xs: &[usize]| xs.iter().map(|&v| map[v]).collect::<Vec<_>>();
                    let r = back(&sp.r);
                    let head = (!r.is_empty()).then(|| spawn(vec![r], &mut plans)[0]);
                    Plan::Two(SpiderDescriptor { s: back(&sp.s), k: back(&sp.k), thin: sp.thin, r: Vec::new() }, head)
                }
            }
        };
        plans[id] = Some(plan);
    }
    // Children always have larger plan ids than their parent.
    let mut b = TreeBuilder::default();
    let mut built = vec![NONE; plans.len()];
    for id in (0..plans.len()).rev() {
        built[id] = match plans[id].take().expect("every plan is filled") {
            Plan::Leaf(v) => b.leaf(v),
            Plan::Zero(kids) => b.zero(kids.iter().map(|&c| built[c]).collect()),
            Plan::One(kids) => b.one(kids.iter().map(|&c| built[c]).collect()),
            Plan::Two(sp, head) => b.spider(sp.s, sp.k, sp.thin, head.map(|c| built[c])),
        };
    }
    b.finish(built[0], n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_single_spider() {
        let t = p4_sparse_tree(&Graph::path(4)).unwrap();
        assert_eq!(t.serialize(), "(2 thin [S: 0 3][K: 1 2] 0 1 2 3)");
        assert_eq!(t.node_count(), 5);
    }

    #[test]
    fn two_k2() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let t = p4_sparse_tree(&g).unwrap();
        assert_eq!(t.serialize(), "(0 (1 0 1) (1 2 3))");
        assert_eq!(t.expand(), g);
        let pp = t.path_partition(0).unwrap();
        assert_eq!(pp.h(), 1);
        assert_eq!(pp.vertices(0).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(pp.vertices(1).collect::<Vec<_>>(), vec![1]);
        assert_eq!(pp.above_adjacent(2), 1);
    }

    #[test]
    fn c5_rejected() {
        assert_eq!(p4_sparse_tree(&Graph::cycle(5)), Err(RecognizeError::NotP4Sparse(vec![0, 1, 2, 3, 4])));
    }

    #[test]
    fn single_vertex_path() {
        let t = p4_sparse_tree(&Graph::empty(1)).unwrap();
        assert_eq!(t.serialize(), "0");
        let pp = t.path_partition(0).unwrap();
        assert_eq!(pp.h(), 0);
        assert_eq!(pp.size(0), 0);
    }

    #[test]
    fn thin_spider_u_in_k() {
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let t = p4_sparse_tree(&g).unwrap();
        let pp = t.path_partition(1).unwrap();
        assert_eq!(pp.h(), 0);
        assert_eq!(pp.node(0), t.root());
        let mut v0: Vec<usize> = pp.vertices(0).collect();
        v0.sort_unstable();
        assert_eq!(v0, vec![0, 2, 3, 4, 5]);
        assert_eq!(pp.adjacent(0), g.degree(1));
    }

    #[test]
    fn spider_with_head_subtree() {
        // thin spider S = {0, 1}, K = {2, 3}, head R = 2K2-free pair {4, 5} non-adjacent
        let g = Graph::new(6, [(0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)]).unwrap();
        let t = p4_sparse_tree(&g).unwrap();
        assert_eq!(t.serialize(), "(2 thin [S: 0 1][K: 2 3] 0 1 2 3 (0 4 5))");
        assert_eq!(t.expand(), g);
        for a in 0..6 {
            for b in 0..6 {
                if a != b {
                    assert_eq!(t.adjacent(a, b), g.has_edge(a, b));
                }
            }
        }
        let pp = t.path_partition(4).unwrap();
        assert_eq!(pp.h(), 1);
        assert_eq!(pp.adjacent(0), 2);
    }

    #[test]
    fn builder_checks() {
        let mut b = TreeBuilder::default();
        let x = b.leaf(0);
        let y = b.leaf(1);
        let z = b.zero(vec![x, y]);
        let bad = b.zero(vec![z, 99]);
        assert!(b.clone().finish(bad, 2).is_err());
        let mut b = TreeBuilder::default();
        let x = b.leaf(0);
        let y = b.leaf(1);
        let z = b.zero(vec![x, y]);
        let w = b.leaf(2);
        let top = b.zero(vec![z, w]);
        assert!(b.finish(top, 3).is_err());
    }
}
