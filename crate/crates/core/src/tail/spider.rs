//! Completion costs when `u` lies in a spider `H = (S, K, R)`.

use crate::graph::{Edge, Graph};
use crate::recognize::{p4_sparse_tree, RecognizeError, SpiderDescriptor, SpiderRole};

use super::{normalize, SpiderCase, TailError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderCost {
    pub case: SpiderCase,
    pub cost: usize,
    pub fills: Vec<Edge>,
}

/// A spider as vertex lists; `s[i]` is paired with `k[i]`.
pub(crate) struct Parts<'a> {
    pub s: &'a [usize],
    pub k: &'a [usize],
    pub thin: bool,
    pub r: &'a [usize],
}

impl Parts<'_> {
    fn role(&self, v: usize) -> Option<SpiderRole> {
        if let Some(i) = self.s.iter().position(|&x| x == v) {
            Some(SpiderRole::S(i))
        } else if let Some(i) = self.k.iter().position(|&x| x == v) {
            Some(SpiderRole::K(i))
        } else {
            self.r.contains(&v).then_some(SpiderRole::R)
        }
    }
}

/// `R \ N[u]` for `u ∈ R`, and the completion of `H[R] + uw` (fills in
/// the caller's vertex ids, `w` included) are supplied by the caller;
/// each is only evaluated when the case needs it.
pub(crate) fn spider_lemma(
    p: &Parts<'_>,
    u: usize,
    w: usize,
    head_non_neighbors: impl FnOnce() -> Vec<usize>,
    recurse: impl FnOnce() -> Result<(usize, Vec<Edge>), TailError>,
) -> Result<SpiderCost, TailError> {
    let kk = p.k.len();
    let role = p.role(u).ok_or(TailError::NotInSpider(u))?;
    let out = match (p.thin, role) {
        (true, SpiderRole::S(j)) => {
            let v = p.k[j];
            if p.r.is_empty() {
                let fills = join(u, p.k.iter().copied().filter(|&x| x != v));
                SpiderCost { case: SpiderCase::ThinS { head_empty: true }, cost: kk - 1, fills }
            } else {
                // The partner becomes universal.
                let mut fills = join(v, p.s.iter().copied().filter(|&x| x != u));
                fills.push((v, w));
                SpiderCost { case: SpiderCase::ThinS { head_empty: false }, cost: kk, fills }
            }
        }
        (true, SpiderRole::K(j)) => {
            let fills = join(u, p.s.iter().copied().filter(|&x| x != p.s[j]));
            SpiderCost { case: SpiderCase::ThinK, cost: kk - 1, fills }
        }
        (true, SpiderRole::R) => {
            let missing = head_non_neighbors();
            // Going through the head costs at least |K|, so it can only
            // win when the head itself needs more than that.
            if missing.len() <= kk {
                SpiderCost { case: SpiderCase::ThinRUniversal, cost: missing.len(), fills: join(u, missing) }
            } else {
                let via = via_head(p.k, w, recurse, SpiderCase::ThinRRecurse)?;
                if missing.len() <= via.cost {
                    SpiderCost { case: SpiderCase::ThinRUniversal, cost: missing.len(), fills: join(u, missing) }
                } else {
                    via
                }
            }
        }
        (false, SpiderRole::S(j)) => {
            let v = p.k[j];
            let hub = |extra: Vec<Edge>, row: u8| {
                let mut fills = vec![(v, u), (v, w)];
                fills.extend(extra);
                SpiderCost { case: SpiderCase::ThickS { row }, cost: fills.len(), fills }
            };
            match (kk, p.r.len()) {
                (3, 0) => hub(Vec::new(), 0),
                (3, 1) => hub(join(u, p.r.iter().copied()), 1),
                (3, _) => hub(join(w, p.k.iter().copied().filter(|&x| x != v)), 2),
                (_, 0) => {
                    // `u` becomes universal.
                    let mut fills = join(u, p.s.iter().copied().filter(|&x| x != u));
                    fills.push((u, v));
                    SpiderCost { case: SpiderCase::ThickS { row: 3 }, cost: fills.len(), fills }
                }
                _ => hub(join(w, p.k.iter().copied().filter(|&x| x != v)), 4),
            }
        }
        (false, SpiderRole::K(j)) => SpiderCost { case: SpiderCase::ThickK, cost: 1, fills: vec![(u, p.s[j])] },
        (false, SpiderRole::R) => via_head(p.k, w, recurse, SpiderCase::ThickR)?,
    };
    Ok(SpiderCost { fills: normalize(out.fills), ..out })
}

fn join(a: usize, xs: impl IntoIterator<Item = usize>) -> Vec<Edge> {
    xs.into_iter().map(|x| (a, x)).collect()
}

/// `w` joins `K` and the head is completed on its own.
fn via_head(
    k: &[usize],
    w: usize,
    recurse: impl FnOnce() -> Result<(usize, Vec<Edge>), TailError>,
    case: SpiderCase,
) -> Result<SpiderCost, TailError> {
    let (cost, mut fills) = recurse()?;
    fills.extend(k.iter().map(|&x| (w, x)));
    Ok(SpiderCost { case, cost: k.len() + cost, fills })
}

fn check_spider(h: &Graph, spider: &SpiderDescriptor, thin: bool) -> Result<(), TailError> {
    spider.validate(h).map_err(|e| TailError::Recognize(RecognizeError::InvalidStructure(e.to_string())))?;
    if spider.thin != thin {
        let want = if thin { "thin" } else { "thick" };
        return Err(TailError::Recognize(RecognizeError::InvalidStructure(format!("expected a {want} spider"))));
    }
    Ok(())
}

fn lemma_on_graph(
    h: &Graph,
    spider: &SpiderDescriptor,
    u: usize,
    mut recurse: impl FnMut(&[usize], usize) -> Result<(usize, Vec<Edge>), TailError>,
) -> Result<SpiderCost, TailError> {
    h.check_vertex(u)?;
    let parts = Parts { s: &spider.s, k: &spider.k, thin: spider.thin, r: &spider.r };
    let missing = || spider.r.iter().copied().filter(|&x| x != u && !h.has_edge(u, x)).collect();
    spider_lemma(&parts, u, h.n(), missing, || recurse(&spider.r, u))
}

/// Cost and fills for `H + uw` when `H` is a thin spider. `recurse(R, u)`
/// must complete `H[R] + uw` and return fills in `H`'s ids with `w = |V(H)|`;
/// [`p4_recurse`] provides that.
pub fn thin_spider_cost(
    h: &Graph,
    spider: &SpiderDescriptor,
    u: usize,
    recurse: impl FnMut(&[usize], usize) -> Result<(usize, Vec<Edge>), TailError>,
) -> Result<SpiderCost, TailError> {
    check_spider(h, spider, true)?;
    lemma_on_graph(h, spider, u, recurse)
}

/// Cost and fills for `H + uw` when `H` is a thick spider (`|K| >= 3`).
pub fn thick_spider_cost(
    h: &Graph,
    spider: &SpiderDescriptor,
    u: usize,
    recurse: impl FnMut(&[usize], usize) -> Result<(usize, Vec<Edge>), TailError>,
) -> Result<SpiderCost, TailError> {
    check_spider(h, spider, false)?;
    lemma_on_graph(h, spider, u, recurse)
}

/// Completes `H[R] + uw` with the P4-sparse algorithm and maps the fills
/// back to `H`'s ids.
pub fn p4_recurse(h: &Graph) -> impl FnMut(&[usize], usize) -> Result<(usize, Vec<Edge>), TailError> + '_ {
    move |r: &[usize], u: usize| {
        let (sub, map) = h.induced_subgraph(r)?;
        let tree = p4_sparse_tree(&sub)?;
        let local = map.iter().position(|&x| x == u).ok_or(TailError::NotInSpider(u))?;
        let result = super::p4_tail_unverified(&tree, local)?;
        let back = |x: usize| if x == sub.n() { h.n() } else { map[x] };
        Ok((result.fill_count, result.fill_edges.iter().map(|&(a, b)| (back(a), back(b))).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{min_tail_completion, GraphClass};

    /// Spider with `S = 0..k`, `K = k..2k`, `R = 2k..2k+r` (edgeless head).
    fn spider(k: usize, r: usize, thin: bool) -> (Graph, SpiderDescriptor) {
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if (i == j) == thin {
                    edges.push((i, k + j));
                }
                if i < j {
                    edges.push((k + i, k + j));
                }
            }
            for x in 0..r {
                edges.push((k + i, 2 * k + x));
            }
        }
        let g = Graph::new(2 * k + r, edges).unwrap();
        let d = SpiderDescriptor { s: (0..k).collect(), k: (k..2 * k).collect(), thin, r: (2 * k..2 * k + r).collect() };
        (g, d)
    }

    #[test]
    fn thin_point_cases() {
        let (g, d) = spider(3, 0, true);
        assert_eq!(thin_spider_cost(&g, &d, 3, p4_recurse(&g)).unwrap().cost, 2);
        let (g, d) = spider(2, 0, true);
        assert_eq!(thin_spider_cost(&g, &d, 2, p4_recurse(&g)).unwrap().cost, 1);
        assert_eq!(thin_spider_cost(&g, &d, 0, p4_recurse(&g)).unwrap().cost, 1);
    }

    #[test]
    fn thick_point_cases() {
        let (g, d) = spider(3, 0, false);
        assert_eq!(thick_spider_cost(&g, &d, 0, p4_recurse(&g)).unwrap().cost, 2);
        assert_eq!(thick_spider_cost(&g, &d, 3, p4_recurse(&g)).unwrap().cost, 1);
        let (g, d) = spider(4, 0, false);
        assert_eq!(thick_spider_cost(&g, &d, 0, p4_recurse(&g)).unwrap().cost, 4);
    }

    #[test]
    fn head_cases_match_oracle() {
        for thin in [true, false] {
            let k = if thin { 2 } else { 3 };
            let (g, d) = spider(k, 2, thin);
            let u = 2 * k;
            let got = if thin {
                thin_spider_cost(&g, &d, u, p4_recurse(&g)).unwrap()
            } else {
                thick_spider_cost(&g, &d, u, p4_recurse(&g)).unwrap()
            };
            assert_eq!(got.cost, min_tail_completion(&g, GraphClass::P4Sparse, u).unwrap().fill_count, "thin={thin}");
            assert_eq!(got.cost, got.fills.len());
        }
    }

    #[test]
    fn wrong_kind_rejected() {
        let (g, d) = spider(3, 0, true);
        assert!(thick_spider_cost(&g, &d, 0, p4_recurse(&g)).is_err());
        assert!(matches!(thin_spider_cost(&g, &d, 9, p4_recurse(&g)), Err(TailError::Graph(_))));
    }
}
