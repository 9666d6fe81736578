//! Bitmask adjacency for graphs of at most 64 vertices.

use crate::graph::{Edge, Graph};

pub const MAX_SMALL: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn from_graph(g: &Graph) -> Option<Self> {
        if g.n() > MAX_SMALL {
            return None;
        }
        let mut adj = vec![0u64; g.n()];
        for (a, b) in g.edges() {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Some(SmallGraph { n: g.n(), adj })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn add_edge(&mut self, (a, b): Edge) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    #[inline]
    pub fn remove_edge(&mut self, (a, b): Edge) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    #[inline]
    fn deg_in(&self, v: usize, mask: u64) -> u32 {
        (self.adj[v] & mask).count_ones()
    }

    /// Degree multiset inside `mask` as (edge count, min degree, max degree).
    #[inline]
    fn profile(&self, mask: u64) -> (u32, u32, u32) {
        let (mut sum, mut lo, mut hi) = (0, u32::MAX, 0);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = self.deg_in(v, mask);
            sum += d;
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (sum / 2, lo, hi)
    }

    /// Four vertices: three edges with all degrees in `1..=2` is exactly a P4.
    #[inline]
    pub fn is_p4(&self, mask: u64) -> bool {
        let (e, lo, hi) = self.profile(mask);
        e == 3 && lo >= 1 && hi <= 2
    }

    #[inline]
    pub fn is_c4(&self, mask: u64) -> bool {
        let (e, lo, hi) = self.profile(mask);
        e == 4 && lo == 2 && hi == 2
    }

    #[inline]
    pub fn is_2k2(&self, mask: u64) -> bool {
        let (e, lo, hi) = self.profile(mask);
        e == 2 && lo == 1 && hi == 1
    }

    /// Five vertices, five edges, 2-regular: the only 2-regular graph on five
    /// vertices is the 5-cycle.
    #[inline]
    pub fn is_c5(&self, mask: u64) -> bool {
        let (e, lo, hi) = self.profile(mask);
        e == 5 && lo == 2 && hi == 2
    }

    /// Induced P4s among the five 4-subsets of a 5-set.
    #[inline]
    pub fn p4_count_in_5set(&self, mask: u64) -> u32 {
        let mut count = 0;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if self.is_p4(mask & !bit) {
                count += 1;
            }
        }
        count
    }

    /// Vertex pairs inside `mask` that are not adjacent.
    pub fn non_edges_within(&self, mask: u64) -> impl Iterator<Item = Edge> + '_ {
        let verts: Vec<usize> = bits(mask).collect();
        let mut out = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out.into_iter()
    }

    pub fn to_graph(&self) -> Graph {
        let edges = (0..self.n).flat_map(|a| bits(self.adj[a] & !((2u64 << a) - 1)).map(move |b| (a, b)));
        Graph::new(self.n, edges).expect("bitmask graph is simple")
    }
}

pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// All `k`-subsets of `0..n` as masks, in increasing numeric order.
pub fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n || n > MAX_SMALL {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u128 = 1u128 << n;
    let mut s: u64 = (1u64 << k) - 1;
    while (s as u128) < limit {
        out.push(s);
        // Gosper's hack.
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}
