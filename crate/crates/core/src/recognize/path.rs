/// The root-to-`u` path of a decomposition tree, with `V(G) \ {u}` split
/// into one level per path node.
///
/// Trees lay their vertices out so that every subtree is a contiguous slice
/// of `order`; level `i` is then the slice of path node `i` minus the slice
/// of path node `i + 1` (the last "node" being `u`'s own position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPartition<'a> {
    order: &'a [usize],
    nodes: Vec<usize>,
    bounds: Vec<(usize, usize)>,
    adjacent: Vec<usize>,
    above: Vec<usize>,
    below: Vec<usize>,
}

impl<'a> PathPartition<'a> {
    /// `bounds` holds one nested position range per path node followed by
    /// `u`'s singleton range; `adjacent[i]` counts `N(u)` in level `i`.
    pub(crate) fn new(order: &'a [usize], nodes: Vec<usize>, bounds: Vec<(usize, usize)>, adjacent: Vec<usize>) -> Self {
        debug_assert_eq!(bounds.len(), nodes.len() + 1);
        debug_assert_eq!(adjacent.len(), nodes.len());
        let levels = nodes.len();
        let mut above = vec![0; levels + 1];
        for i in 0..levels {
            above[i + 1] = above[i] + adjacent[i];
        }
        let mut below = vec![0; levels + 1];
        for i in (0..levels).rev() {
            let size = (bounds[i].1 - bounds[i].0) - (bounds[i + 1].1 - bounds[i + 1].0);
            below[i] = below[i + 1] + size - adjacent[i];
        }
        PathPartition { order, nodes, bounds, adjacent, above, below }
    }

    /// Index of the last path node.
    pub fn h(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Tree node `t_i`.
    pub fn node(&self, i: usize) -> usize {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn size(&self, i: usize) -> usize {
        (self.bounds[i].1 - self.bounds[i].0) - (self.bounds[i + 1].1 - self.bounds[i + 1].0)
    }

    /// `|N(u) ∩ V_i|`.
    pub fn adjacent(&self, i: usize) -> usize {
        self.adjacent[i]
    }

    /// `|N(u) ∩ (V_0 ∪ … ∪ V_{i-1})|`, for `i` in `0..=h+1`.
    pub fn above_adjacent(&self, i: usize) -> usize {
        self.above[i]
    }

    /// `|(V_i ∪ … ∪ V_h) \ N(u)|`, for `i` in `0..=h+1`.
    pub fn below_non_adjacent(&self, i: usize) -> usize {
        self.below[i]
    }

    pub fn vertices(&self, i: usize) -> impl Iterator<Item = usize> + 'a {
        let (lo, hi) = self.bounds[i];
        let (ilo, ihi) = self.bounds[i + 1];
        self.order[lo..ilo].iter().chain(&self.order[ihi..hi]).copied()
    }

    /// Vertices of `V_i ∪ … ∪ V_h`.
    pub fn vertices_from(&self, i: usize) -> impl Iterator<Item = usize> + 'a {
        let (lo, hi) = self.bounds[i];
        let (ulo, uhi) = self.bounds[self.nodes.len()];
        self.order[lo..ulo].iter().chain(&self.order[uhi..hi]).copied()
    }

    /// Level holding the vertex at layout position `p`, or `None` for `u`
    /// itself and for positions outside the tree.
    pub fn level_of_position(&self, p: usize) -> Option<usize> {
        let inside = |i: usize| self.bounds[i].0 <= p && p < self.bounds[i].1;
        if !inside(0) || inside(self.nodes.len()) {
            return None;
        }
        // Ranges are nested, so `inside` is monotone along the path.
        let (mut lo, mut hi) = (0, self.nodes.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if inside(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }
}
