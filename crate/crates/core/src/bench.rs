//! Timing of the completion algorithms on prebuilt structures.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::generate::{generate, generate_certificate, Certificate, GenError, GenSpec, SplitMix64};
use crate::oracle::GraphClass;
use crate::tail::{p4_tail_unverified, qt_tail_unverified, split_tail_unverified, threshold_tail_unverified, Mode};

/// Each timed run repeats the solve until about this many vertices have
/// been processed, so small instances still give measurable times.
const WORK_PER_RUN: usize = 1 << 18;
/// Fewest tail vertices per instance and run.
const TAILS: usize = 2;
/// Instances per size. The output size depends on the instance far more
/// than on the tail, so the sample favours instances.
const INSTANCES: u64 = 64;

#[derive(Debug, Clone)]
pub struct Measurement {
    pub n: usize,
    /// Time to generate the instance and build its structure.
    pub build: Duration,
    /// Mean time of one solve, for each run.
    pub runs: Vec<Duration>,
}

impl Measurement {
    pub fn median(&self) -> Duration {
        let mut r = self.runs.clone();
        r.sort_unstable();
        r[r.len() / 2]
    }

    pub fn mean(&self) -> Duration {
        self.runs.iter().sum::<Duration>() / self.runs.len() as u32
    }
}

/// Times the tail algorithm for `class` on instances with `n` vertices
/// generated from `seed`, `seed + 1`, and so on. Run `r` is the mean solve
/// time over every instance's `r`-th run.
pub fn measure(class: GraphClass, n: usize, seed: u64, runs: usize) -> Result<Measurement, GenError> {
    let runs = runs.max(1);
    let mut build = Duration::ZERO;
    let mut totals = vec![Duration::ZERO; runs];
    for i in 0..INSTANCES {
        let (b, times) = measure_instance(class, n, seed.wrapping_add(i), runs)?;
        build += b;
        for (t, x) in totals.iter_mut().zip(times) {
            *t += x;
        }
    }
    let per = INSTANCES as u32;
    Ok(Measurement { n, build: build / per, runs: totals.into_iter().map(|t| t / per).collect() })
}

/// Tails spread evenly over the structure's vertex order from a random
/// offset. Each vertex is equally likely to be drawn, and every part of the
/// structure is represented.
fn spread_tails(cert: &Certificate, count: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let order: Vec<usize> = match cert {
        Certificate::Split(p) => p.clique().iter().chain(p.independent()).copied().collect(),
        Certificate::Threshold(t) => t.rank_order(),
        Certificate::Qt(t) => t.order().to_vec(),
        Certificate::P4Sparse(t) => t.order().to_vec(),
    };
    let offset = rng.unit();
    (0..count).map(|j| order[((j as f64 + offset) * order.len() as f64 / count as f64) as usize]).collect()
}

fn measure_instance(class: GraphClass, n: usize, seed: u64, runs: usize) -> Result<(Duration, Vec<Duration>), GenError> {
    let spec = GenSpec::new(class, n, seed);
    let start = Instant::now();
    let (graph, cert) = match class {
        GraphClass::Split => {
            let (g, c) = generate(&spec)?;
            (Some(g), c)
        }
        _ => (None, generate_certificate(&spec)?),
    };
    let build = start.elapsed();

    let tails = spread_tails(&cert, (WORK_PER_RUN / n).max(TAILS), &mut SplitMix64::new(seed ^ 0x5EED));
    let solve = |u: usize| -> usize {
        let r = match &cert {
            Certificate::Split(p) => split_tail_unverified(graph.as_ref().expect("split keeps its graph"), p, u),
            Certificate::Threshold(t) => threshold_tail_unverified(t, u, Mode::Corrected),
            Certificate::Qt(t) => qt_tail_unverified(t, u, Mode::Corrected),
            Certificate::P4Sparse(t) => p4_tail_unverified(t, u),
        };
        r.expect("generated instances are valid").fill_count
    };
    let times = (0..runs)
        .map(|_| {
            let start = Instant::now();
            for &u in &tails {
                black_box(solve(black_box(u)));
            }
            start.elapsed() / tails.len() as u32
        })
        .collect();
    Ok((build, times))
}
