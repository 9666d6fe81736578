//! Algorithm-versus-oracle comparison over generated instances.

use std::collections::BTreeMap;
use std::fmt;

use crate::generate::{generate, GenSpec, Knobs, SplitMix64};
use crate::graph::Graph;
use crate::oracle::{GraphClass, Oracle, OracleError};
use crate::tail::{solve, CompletionResult, Mode, TailError};

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub class: GraphClass,
    /// Instances have between `min_n` and `max_n` vertices.
    pub min_n: usize,
    pub max_n: usize,
    pub iters: usize,
    pub seed: u64,
    pub mode: Mode,
    pub knobs: Knobs,
}

impl FuzzConfig {
    pub fn new(class: GraphClass, max_n: usize, iters: usize, seed: u64) -> Self {
        FuzzConfig { class, min_n: 1, max_n, iters, seed, mode: Mode::Corrected, knobs: Knobs::default() }
    }
}

/// One generated case: the instance and the tail vertex.
#[derive(Debug, Clone)]
pub struct Case {
    pub index: usize,
    pub graph: Graph,
    pub u: usize,
}

/// Draws case `index` of a run. The same configuration always yields the
/// same cases.
pub fn case(config: &FuzzConfig, index: usize) -> Case {
    let mut rng = SplitMix64::new(config.seed.wrapping_add(index as u64));
    let n = rng.range(config.min_n.max(1), config.max_n.max(config.min_n).max(1));
    let spec = GenSpec { class: config.class, n, seed: rng.next_u64(), knobs: config.knobs.clone() };
    let (graph, _) = generate(&spec).expect("fuzz specs are valid");
    let u = rng.below(n);
    Case { index, graph, u }
}

#[derive(Debug, Clone)]
pub enum Failure {
    /// Counts differ, or the witness size disagrees with the count.
    Count {
        algorithm: usize,
        witness: usize,
        oracle: usize,
    },
    Algorithm(TailError),
    Oracle(OracleError),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Count { algorithm, witness, oracle } => {
                write!(f, "algorithm {algorithm} ({witness} fill edges listed), oracle {oracle}")
            }
            Failure::Algorithm(e) => write!(f, "algorithm error: {e}"),
            Failure::Oracle(e) => write!(f, "oracle error: {e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub case: Case,
    pub failure: Failure,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub checked: usize,
    /// Winning candidate families and how often each won.
    pub wins: BTreeMap<&'static str, usize>,
    pub mismatch: Option<Mismatch>,
}

/// Solves one case with both the algorithm and the oracle. Returns the
/// algorithm's result when they agree.
pub fn check_case(class: GraphClass, mode: Mode, case: &Case) -> Result<CompletionResult, Failure> {
    let result = solve(&case.graph, class, case.u, mode).map_err(Failure::Algorithm)?;
    let oracle = Oracle::new(class).max_vertices(case.graph.n() + 1).min_tail_completion(&case.graph, case.u).map_err(Failure::Oracle)?;
    if result.fill_count != oracle.fill_count || result.fill_edges.len() != result.fill_count {
        return Err(Failure::Count { algorithm: result.fill_count, witness: result.fill_edges.len(), oracle: oracle.fill_count });
    }
    Ok(result)
}

/// Runs until the first mismatch.
pub fn run(config: &FuzzConfig) -> FuzzReport {
    let mut report = FuzzReport::default();
    for index in 0..config.iters {
        let case = case(config, index);
        match check_case(config.class, config.mode, &case) {
            Ok(result) => {
                report.checked += 1;
                *report.wins.entry(result.winner.family()).or_insert(0) += 1;
            }
            Err(failure) => {
                report.mismatch = Some(Mismatch { case, failure });
                break;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iterations() {
        let r = run(&FuzzConfig::new(GraphClass::Split, 8, 0, 1));
        assert_eq!(r.checked, 0);
        assert!(r.wins.is_empty() && r.mismatch.is_none());
    }

    #[test]
    fn cases_are_reproducible() {
        let c = FuzzConfig::new(GraphClass::P4Sparse, 8, 10, 3);
        let (a, b) = (case(&c, 4), case(&c, 4));
        assert_eq!((a.graph.to_text(), a.u), (b.graph.to_text(), b.u));
    }

    #[test]
    fn short_runs_agree() {
        for class in GraphClass::ALL {
            let r = run(&FuzzConfig::new(class, 7, 40, 11));
            assert!(r.mismatch.is_none(), "{class}: {:?}", r.mismatch);
            assert_eq!(r.checked, 40);
        }
    }

    #[test]
    fn verbatim_threshold_finds_a_counterexample() {
        let mut c = FuzzConfig::new(GraphClass::Threshold, 5, 200, 1);
        c.mode = Mode::Verbatim;
        assert!(run(&c).mismatch.is_some());
    }
}
