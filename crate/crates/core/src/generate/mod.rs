//! Seeded random instances together with the structure they were built
//! from. Every graph is the expansion of its certificate, so the two always
//! agree.

mod rng;

pub use rng::SplitMix64;

use thiserror::Error;

use crate::graph::Graph;
use crate::oracle::GraphClass;
use crate::recognize::{P4SparseTree, QtBuilder, QtTree, SplitPartition, ThresholdLevel, ThresholdTree, TreeBuilder};

/// Shape parameters. Probabilities must lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Knobs {
    /// Largest bag drawn for quasi-threshold trees (a bag can grow by one
    /// to absorb a lone child).
    pub max_bag: usize,
    /// Most children of a 0-, 1- or quasi-threshold node.
    pub max_children: usize,
    /// Chance that a P4-sparse subtree with at least four vertices is a spider.
    pub spider_prob: f64,
    /// Chance that a spider has no head, when its size allows it.
    pub empty_head_prob: f64,
    /// Chance that a spider with room for `|K| >= 3` is thick.
    pub thick_prob: f64,
    /// Chance of each S-K edge in split graphs.
    pub split_density: f64,
    /// Chance that a threshold vertex is added as dominating rather than isolated.
    pub dominating_prob: f64,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs {
            max_bag: 3,
            max_children: 3,
            spider_prob: 0.4,
            empty_head_prob: 0.5,
            thick_prob: 0.5,
            split_density: 0.5,
            dominating_prob: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub class: GraphClass,
    pub n: usize,
    pub seed: u64,
    pub knobs: Knobs,
}

impl GenSpec {
    pub fn new(class: GraphClass, n: usize, seed: u64) -> Self {
        GenSpec { class, n, seed, knobs: Knobs::default() }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::Empty);
        }
        let k = &self.knobs;
        if k.max_bag == 0 {
            return Err(GenError::Knob("max_bag must be at least 1".into()));
        }
        if k.max_children < 2 {
            return Err(GenError::Knob("max_children must be at least 2".into()));
        }
        for (name, p) in [
            ("spider_prob", k.spider_prob),
            ("empty_head_prob", k.empty_head_prob),
            ("thick_prob", k.thick_prob),
            ("split_density", k.split_density),
            ("dominating_prob", k.dominating_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::Knob(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("instances need at least one vertex")]
    Empty,
    #[error("invalid knob: {0}")]
    Knob(String),
    #[error("split instances are generated from the graph; use generate")]
    SplitNeedsGraph,
}

/// The structure an instance was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Split(SplitPartition),
    Threshold(ThresholdTree),
    Qt(QtTree),
    P4Sparse(P4SparseTree),
}

impl Certificate {
    pub fn class(&self) -> GraphClass {
        match self {
            Certificate::Split(_) => GraphClass::Split,
            Certificate::Threshold(_) => GraphClass::Threshold,
            Certificate::Qt(_) => GraphClass::Qt,
            Certificate::P4Sparse(_) => GraphClass::P4Sparse,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Certificate::Split(p) => p.n(),
            Certificate::Threshold(t) => t.n(),
            Certificate::Qt(t) => t.n(),
            Certificate::P4Sparse(t) => t.n(),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Certificate::Split(p) => p.serialize(),
            Certificate::Threshold(t) => t.serialize(),
            Certificate::Qt(t) => t.serialize(),
            Certificate::P4Sparse(t) => t.serialize(),
        }
    }
}

/// A random member of `spec.class` and its certificate.
pub fn generate(spec: &GenSpec) -> Result<(Graph, Certificate), GenError> {
    spec.validate()?;
    if spec.class == GraphClass::Split {
        return Ok(split(spec));
    }
    let cert = generate_certificate(spec)?;
    let g = match &cert {
        Certificate::Threshold(t) => t.expand(),
        Certificate::Qt(t) => t.expand(),
        Certificate::P4Sparse(t) => t.expand(),
        Certificate::Split(_) => unreachable!(),
    };
    Ok((g, cert))
}

/// Just the tree, without expanding the graph; what benchmarks use, since
/// the expansion can have quadratically many edges.
pub fn generate_certificate(spec: &GenSpec) -> Result<Certificate, GenError> {
    spec.validate()?;
    let mut g = Gen { rng: SplitMix64::new(spec.seed), knobs: &spec.knobs, perm: Vec::new(), next: 0 };
    g.perm = g.rng.permutation(spec.n);
    Ok(match spec.class {
        GraphClass::Split => return Err(GenError::SplitNeedsGraph),
        GraphClass::Threshold => Certificate::Threshold(g.threshold()),
        GraphClass::Qt => Certificate::Qt(g.qt()),
        GraphClass::P4Sparse => Certificate::P4Sparse(g.p4_sparse()),
    })
}

/// Uniform vertex from the stream seeded with `seed`.
pub fn pick_tail_vertex(g: &Graph, seed: u64) -> usize {
    SplitMix64::new(seed).below(g.n())
}

fn split(spec: &GenSpec) -> (Graph, Certificate) {
    let mut rng = SplitMix64::new(spec.seed);
    let n = spec.n;
    let perm = rng.permutation(n);
    let k = rng.range(1, n);
    let (clique, indep) = perm.split_at(k);
    let mut edges = Vec::new();
    for (i, &a) in clique.iter().enumerate() {
        edges.extend(clique[i + 1..].iter().map(|&b| (a, b)));
        for &s in indep {
            if rng.chance(spec.knobs.split_density) {
                edges.push((a, s));
            }
        }
    }
    let g = Graph::new(n, edges).expect("generated edges are simple");
    let p = SplitPartition::new(&g, clique.iter().copied()).expect("generated partition is valid");
    (g, Certificate::Split(p))
}

struct Gen<'a> {
    rng: SplitMix64,
    knobs: &'a Knobs,
    perm: Vec<usize>,
    next: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Join {
    Zero,
    One,
}

impl Gen<'_> {
    fn vertex(&mut self) -> usize {
        self.next += 1;
        self.perm[self.next - 1]
    }

    fn vertices(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.vertex()).collect()
    }

    /// `total >= 2` split into between 2 and `max_children` positive parts.
    fn parts(&mut self, total: usize) -> Vec<usize> {
        let c = self.rng.range(2, self.knobs.max_children.min(total));
        let mut cuts = Vec::with_capacity(c + 1);
        while cuts.len() < c - 1 {
            let x = self.rng.range(1, total - 1);
            if !cuts.contains(&x) {
                cuts.push(x);
            }
        }
        cuts.sort_unstable();
        cuts.push(total);
        let mut prev = 0;
        cuts.into_iter()
            .map(|x| {
                let part = x - prev;
                prev = x;
                part
            })
            .collect()
    }

    /// A creation sequence read backwards: the trailing run of dominating
    /// vertices is `C_0`, the run of isolated ones before it `I_1`, and so
    /// on. The first vertex joins whichever run follows it, so the deepest
    /// level always has at least two vertices and the levels are canonical.
    fn threshold(&mut self) -> ThresholdTree {
        let n = self.perm.len();
        if n == 1 {
            return ThresholdTree::from_levels(1, vec![ThresholdLevel { clique: vec![self.perm[0]], indep: Vec::new() }])
                .expect("single vertex");
        }
        let dominating: Vec<bool> = (0..n).map(|j| j > 0 && self.rng.chance(self.knobs.dominating_prob)).collect();
        let mut runs: Vec<(bool, Vec<usize>)> = Vec::new();
        for j in (1..n).rev() {
            match runs.last_mut() {
                Some((d, run)) if *d == dominating[j] => run.push(self.perm[j]),
                _ => runs.push((dominating[j], vec![self.perm[j]])),
            }
        }
        runs.last_mut().expect("n >= 2").1.push(self.perm[0]);
        let mut levels = vec![ThresholdLevel::default()];
        for (dom, run) in runs {
            if dom {
                levels.last_mut().expect("nonempty").clique = run;
            } else {
                if !levels.last().expect("nonempty").clique.is_empty() {
                    levels.push(ThresholdLevel::default());
                }
                levels.last_mut().expect("nonempty").indep = run;
            }
        }
        ThresholdTree::from_levels(n, levels).expect("creation sequences give canonical levels")
    }

    fn qt(&mut self) -> QtTree {
        let n = self.perm.len();
        let mut b = QtBuilder::default();
        let root = if n >= 2 && self.rng.chance(0.25) {
            let kids = self.parts(n).into_iter().map(|p| self.qt_node(&mut b, p)).collect();
            b.node(Vec::new(), kids)
        } else {
            self.qt_node(&mut b, n)
        };
        b.finish(root, n).expect("generated bag tree is canonical")
    }

    fn qt_node(&mut self, b: &mut QtBuilder, size: usize) -> usize {
        let mut bag = self.rng.range(1, self.knobs.max_bag.min(size));
        if size - bag == 1 {
            bag += 1;
        }
        let bag_vertices = self.vertices(bag);
        let rest = size - bag;
        if rest == 0 {
            return b.push(bag_vertices);
        }
        let kids = self.parts(rest).into_iter().map(|p| self.qt_node(b, p)).collect();
        b.node(bag_vertices, kids)
    }

    fn p4_sparse(&mut self) -> P4SparseTree {
        let n = self.perm.len();
        let mut b = TreeBuilder::default();
        let root = self.p4_node(&mut b, n, None);
        b.finish(root, n).expect("generated tree is valid")
    }

    /// A subtree on `size` vertices whose root is not a `parent` join node.
    fn p4_node(&mut self, b: &mut TreeBuilder, size: usize, parent: Option<Join>) -> usize {
        if size == 1 {
            let v = self.vertex();
            return b.leaf(v);
        }
        if size >= 4 && self.rng.chance(self.knobs.spider_prob) {
            let thick = size >= 6 && self.rng.chance(self.knobs.thick_prob);
            let k_min = if thick { 3 } else { 2 };
            let k_max = size / 2;
            let headed_max = (size - 1) / 2;
            let k = if (size.is_multiple_of(2) && self.rng.chance(self.knobs.empty_head_prob)) || headed_max < k_min {
                k_max
            } else {
                self.rng.range(k_min, headed_max)
            };
            let head = (size > 2 * k).then(|| self.p4_node(b, size - 2 * k, None));
            let s = self.vertices(k);
            let kk = self.vertices(k);
            return b.spider(s, kk, !thick, head);
        }
        let join = match parent {
            Some(Join::Zero) => Join::One,
            Some(Join::One) => Join::Zero,
            None if self.rng.chance(0.5) => Join::Zero,
            None => Join::One,
        };
        let kids = self.parts(size).into_iter().map(|p| self.p4_node(b, p, Some(join))).collect();
        match join {
            Join::Zero => b.zero(kids),
            Join::One => b.one(kids),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_member;
    use crate::recognize::{p4_sparse_tree, qt_tree, split_partition, threshold_tree};

    #[test]
    fn single_vertex_every_class() {
        for class in GraphClass::ALL {
            let (g, cert) = generate(&GenSpec::new(class, 1, 5)).unwrap();
            assert_eq!((g.n(), g.m()), (1, 0));
            assert_eq!(cert.n(), 1);
        }
    }

    #[test]
    fn deterministic() {
        let spec = GenSpec::new(GraphClass::Threshold, 6, 42);
        let (a, _) = generate(&spec).unwrap();
        let (b, _) = generate(&spec).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn p4_sparse_seed_7() {
        let (g, _) = generate(&GenSpec::new(GraphClass::P4Sparse, 7, 7)).unwrap();
        assert!(is_member(&g, GraphClass::P4Sparse));
    }

    #[test]
    fn members_and_recognized() {
        for class in GraphClass::ALL {
            for seed in 0..60 {
                let n = 1 + seed as usize % 10;
                let (g, cert) = generate(&GenSpec::new(class, n, seed)).unwrap();
                assert!(is_member(&g, class), "{class} seed {seed}");
                let ok = match class {
                    GraphClass::Split => split_partition(&g).is_ok(),
                    GraphClass::Threshold => threshold_tree(&g).is_ok(),
                    GraphClass::Qt => qt_tree(&g).is_ok(),
                    GraphClass::P4Sparse => p4_sparse_tree(&g).is_ok(),
                };
                assert!(ok, "{class} seed {seed}: {}", cert.serialize());
            }
        }
    }

    #[test]
    fn pick_tail_vertex_is_uniform() {
        let g = Graph::empty(5);
        let mut counts = [0usize; 5];
        for seed in 0..10_000 {
            counts[pick_tail_vertex(&g, seed)] += 1;
        }
        // Binomial(10^4, 1/5): sigma = 40.
        assert!(counts.iter().all(|&c| c.abs_diff(2000) <= 200), "{counts:?}");
        assert_eq!(pick_tail_vertex(&Graph::empty(1), 9), 0);
        assert_eq!(pick_tail_vertex(&g, 17), pick_tail_vertex(&g, 17));
    }

    #[test]
    fn bad_specs() {
        assert_eq!(generate(&GenSpec::new(GraphClass::Qt, 0, 1)).unwrap_err(), GenError::Empty);
        let mut spec = GenSpec::new(GraphClass::P4Sparse, 5, 1);
        spec.knobs.spider_prob = 1.5;
        assert!(matches!(generate(&spec), Err(GenError::Knob(_))));
        assert_eq!(generate_certificate(&GenSpec::new(GraphClass::Split, 5, 1)).unwrap_err(), GenError::SplitNeedsGraph);
    }
}
