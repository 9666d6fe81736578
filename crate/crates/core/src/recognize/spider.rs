use thiserror::Error;

use crate::graph::{components_within, Graph};

/// A spider `(S, K, R)`: `S` independent, `K` a clique with `|S| = |K| >= 2`,
/// every `R` vertex adjacent to all of `K` and none of `S`. `s[i]` is
/// paired with `k[i]`: its only `K` neighbour when thin, its only `K`
/// non-neighbour when thick.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpiderDescriptor {
    pub s: Vec<usize>,
    pub k: Vec<usize>,
    pub thin: bool,
    pub r: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiderRole {
    /// Index into the aligned `s`/`k` lists.
    S(usize),
    K(usize),
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpiderError {
    #[error("|S| = {s} and |K| = {k} must be equal and at least 2")]
    Sizes { s: usize, k: usize },
    #[error("a thick spider needs |K| >= 3")]
    ThickTooSmall,
    #[error("vertex {0} is used twice or is out of range")]
    BadVertex(usize),
    #[error("vertices {0} and {1} break the spider adjacency rules")]
    Adjacency(usize, usize),
}

impl SpiderDescriptor {
    /// Sorts pairs by their `S` vertex and `R` ascending.
    pub fn canonical(mut self) -> Self {
        let mut pairs: Vec<(usize, usize)> = self.s.iter().copied().zip(self.k.iter().copied()).collect();
        pairs.sort_unstable();
        self.s = pairs.iter().map(|p| p.0).collect();
        self.k = pairs.iter().map(|p| p.1).collect();
        self.r.sort_unstable();
        self
    }

    pub fn size(&self) -> usize {
        self.s.len() + self.k.len() + self.r.len()
    }

    pub fn role(&self, v: usize) -> Option<SpiderRole> {
        if let Some(i) = self.s.iter().position(|&x| x == v) {
            Some(SpiderRole::S(i))
        } else if let Some(i) = self.k.iter().position(|&x| x == v) {
            Some(SpiderRole::K(i))
        } else {
            self.r.contains(&v).then_some(SpiderRole::R)
        }
    }

    /// Whether `S[i]` and `K[j]` are adjacent.
    pub fn pair_adjacent(&self, i: usize, j: usize) -> bool {
        (i == j) == self.thin
    }

    /// Checks every spider rule against `G`, which must have exactly the
    /// vertices `S ∪ K ∪ R`.
    pub fn validate(&self, g: &Graph) -> Result<(), SpiderError> {
        let (ns, nk) = (self.s.len(), self.k.len());
        if ns != nk || nk < 2 {
            return Err(SpiderError::Sizes { s: ns, k: nk });
        }
        if !self.thin && nk < 3 {
            return Err(SpiderError::ThickTooSmall);
        }
        let mut seen = vec![false; g.n()];
        for &v in self.s.iter().chain(&self.k).chain(&self.r) {
            if v >= g.n() || seen[v] {
                return Err(SpiderError::BadVertex(v));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&x| !x) {
            return Err(SpiderError::BadVertex(v));
        }
        let expect = |a: usize, b: usize, adjacent: bool| {
            if g.has_edge(a, b) == adjacent {
                Ok(())
            } else {
                Err(SpiderError::Adjacency(a, b))
            }
        };
        for i in 0..nk {
            for j in 0..nk {
                if i < j {
                    expect(self.s[i], self.s[j], false)?;
                    expect(self.k[i], self.k[j], true)?;
                }
                expect(self.s[i], self.k[j], self.pair_adjacent(i, j))?;
            }
        }
        for &x in &self.r {
            for i in 0..nk {
                expect(x, self.k[i], true)?;
                expect(x, self.s[i], false)?;
            }
        }
        Ok(())
    }
}

/// Finds the spider partition of a connected, co-connected graph, or
/// `None` if it is not a spider. Thin spiders are exactly those with a
/// degree-1 vertex; in a thick spider the `S` vertices are exactly the
/// minimum-degree ones.
pub fn spider_partition(g: &Graph) -> Option<SpiderDescriptor> {
    let n = g.n();
    if n < 4 {
        return None;
    }
    let all: Vec<usize> = (0..n).collect();
    if components_within(g, &all, false).len() != 1 || components_within(g, &all, true).len() != 1 {
        return None;
    }
    let min_deg = (0..n).map(|v| g.degree(v)).min()?;
    let s: Vec<usize> = (0..n).filter(|&v| g.degree(v) == min_deg).collect();
    let mut in_s = vec![false; n];
    s.iter().for_each(|&v| in_s[v] = true);
    let (k, thin) = if min_deg == 1 {
        (s.iter().map(|&v| g.neighbors(v)[0]).collect::<Vec<_>>(), true)
    } else {
        // Pair each S vertex with the one K vertex it misses.
        let mut in_k = vec![false; n];
        for &v in &s {
            for &x in g.neighbors(v) {
                if !in_s[x] {
                    in_k[x] = true;
                }
            }
        }
        let k_all: Vec<usize> = (0..n).filter(|&x| in_k[x]).collect();
        if k_all.len() != s.len() {
            return None;
        }
        let mut k = Vec::with_capacity(s.len());
        for &v in &s {
            let mut missing = k_all.iter().copied().filter(|&x| !g.has_edge(v, x));
            let (Some(x), None) = (missing.next(), missing.next()) else {
                return None;
            };
            k.push(x);
        }
        (k, false)
    };
    let mut used = vec![false; n];
    for &v in s.iter().chain(&k) {
        if used[v] {
            return None;
        }
        used[v] = true;
    }
    let r: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    let spider = SpiderDescriptor { s, k, thin, r }.canonical();
    spider.validate(g).ok()?;
    Some(spider)
}
