//! Threshold and quasi-threshold completions. In both classes an optimal
//! completion makes `w` adjacent to a prefix of the clique bags above `u`
//! (plus `u`), and `u` absorbs the independent parts hanging between that
//! prefix and its own bag.

use crate::graph::Edge;
use crate::oracle::GraphClass;
use crate::recognize::{QtTree, Side, ThresholdTree};

use super::{finish, normalize, verify_completion, Candidate, CandidateKind, CompletionResult, Mode, TailError};

/// Attach costs along a chain of bags `B_0 .. B_i` with `u ∈ B_i` and
/// `off[s]` vertices hanging below `B_{s-1}` beside `B_s` (`off[0]` unused).
/// Returns `(ℓ, cost)` for `ℓ = 0..=i`, then `ℓ = -1` in corrected mode.
fn chain_costs(bags: &[usize], off: &[usize], mode: Mode) -> Vec<(isize, usize)> {
    let i = bags.len() - 1;
    // off_from[s] = off[s] + … + off[i]
    let mut off_from = vec![0; i + 2];
    for s in (1..=i).rev() {
        off_from[s] = off_from[s + 1] + off[s];
    }
    let mut out = Vec::with_capacity(i + 2);
    let mut bag_sum = 0;
    for l in 0..=i {
        bag_sum += bags[l];
        let cost = match mode {
            Mode::Verbatim => off_from[l + 1] + bag_sum,
            Mode::Corrected => off_from[(l + 2).min(i + 1)] + bag_sum - usize::from(l == i),
        };
        out.push((l as isize, cost));
    }
    if mode == Mode::Corrected {
        out.push((-1, off_from[1.min(i + 1)]));
    }
    out
}

/// First index of the absorbed range for candidate `ℓ`.
fn absorb_start(level: isize, mode: Mode) -> usize {
    match mode {
        Mode::Verbatim => (level + 1) as usize,
        Mode::Corrected => (level + 2) as usize,
    }
}

fn threshold_costs(t: &ThresholdTree, u: usize, mode: Mode) -> Result<Vec<(CandidateKind, usize)>, TailError> {
    let (i, side) = t.level_of(u)?;
    let h = t.h();
    let kind = |level| CandidateKind::ThresholdAttach { level, mode };
    let costs = match side {
        Side::Clique => {
            let bags: Vec<usize> = (0..=i).map(|d| t.clique(d).len()).collect();
            let off: Vec<usize> = (0..=i).map(|d| if d == 0 { 0 } else { t.indep(d).len() }).collect();
            chain_costs(&bags, &off, mode).into_iter().map(|(l, c)| (kind(l), c)).collect()
        }
        Side::Independent => {
            // `u` first joins every clique level at or below its own.
            let lower_cliques: usize = (i..=h).map(|d| t.clique(d).len()).sum();
            let mut indep_from = vec![0; h + 2];
            for d in (1..=h).rev() {
                indep_from[d] = indep_from[d + 1] + t.indep(d).len();
            }
            let mut out = Vec::with_capacity(h + 2);
            let mut cliques_to = 0;
            for l in 0..=h {
                cliques_to += t.clique(l).len();
                let start = absorb_start(l as isize, mode).min(h + 1);
                // `u` itself is in the absorbed range exactly when i >= start.
                let cost = lower_cliques + indep_from[start] + cliques_to - usize::from(i >= start);
                out.push((kind(l as isize), cost));
            }
            if mode == Mode::Corrected {
                out.push((kind(-1), lower_cliques + indep_from[1.min(h + 1)] - usize::from(i >= 1)));
            }
            out
        }
    };
    Ok(costs)
}

fn threshold_fills(t: &ThresholdTree, u: usize, kind: CandidateKind) -> Vec<Edge> {
    let CandidateKind::ThresholdAttach { level, mode } = kind else { unreachable!("threshold candidates only") };
    let (i, side) = t.level_of(u).expect("checked by caller");
    let w = t.n();
    let h = t.h();
    let mut fills = Vec::new();
    let top = if level < 0 { 0 } else { level as usize + 1 };
    for d in 0..top {
        fills.extend(t.clique(d).iter().filter(|&&c| c != u).map(|&c| (w, c)));
    }
    let start = absorb_start(level, mode).max(1);
    match side {
        Side::Clique => {
            for d in start..=i {
                fills.extend(t.indep(d).iter().map(|&x| (u, x)));
            }
        }
        Side::Independent => {
            for d in i..=h {
                fills.extend(t.clique(d).iter().map(|&c| (u, c)));
            }
            for d in start..=h {
                fills.extend(t.indep(d).iter().filter(|&&x| x != u).map(|&x| (u, x)));
            }
        }
    }
    fills
}

/// Minimum completion of a threshold graph, without the membership check.
pub fn threshold_tail_unverified(t: &ThresholdTree, u: usize, mode: Mode) -> Result<CompletionResult, TailError> {
    let costs = threshold_costs(t, u, mode)?;
    Ok(finish(costs, |k| threshold_fills(t, u, k)))
}

pub fn threshold_tail(t: &ThresholdTree, u: usize, mode: Mode) -> Result<CompletionResult, TailError> {
    let result = threshold_tail_unverified(t, u, mode)?;
    verify_completion(&t.expand(), GraphClass::Threshold, u, &result.fill_edges)?;
    Ok(result)
}

/// Every attach candidate with its fills. In verbatim mode a candidate's
/// cost is the formula value and may exceed its fill count by one.
pub fn threshold_candidates(t: &ThresholdTree, u: usize, mode: Mode) -> Result<Vec<Candidate>, TailError> {
    Ok(threshold_costs(t, u, mode)?
        .into_iter()
        .map(|(kind, cost)| Candidate { kind, cost, fills: normalize(threshold_fills(t, u, kind)) })
        .collect())
}

/// Path nodes, their bag sizes, and vertex counts hanging off each step.
type Chain = (Vec<usize>, Vec<usize>, Vec<usize>);

/// Bags on the root-to-`u` path and the vertex counts hanging off it.
fn qt_chain(t: &QtTree, u: usize) -> Result<Chain, TailError> {
    let path = t.path_to(t.node_of(u)?);
    let bags: Vec<usize> = path.iter().map(|&b| t.bag(b).len()).collect();
    let mut off = vec![0; path.len()];
    for s in 1..path.len() {
        let parent = path[s - 1];
        off[s] = t.subtree(parent).len() - t.bag(parent).len() - t.subtree(path[s]).len();
    }
    Ok((path, bags, off))
}

fn qt_costs(t: &QtTree, u: usize, mode: Mode) -> Result<Vec<(CandidateKind, usize)>, TailError> {
    let (_, bags, off) = qt_chain(t, u)?;
    Ok(chain_costs(&bags, &off, mode).into_iter().map(|(level, c)| (CandidateKind::QtAttach { level, mode }, c)).collect())
}

fn qt_fills(t: &QtTree, u: usize, kind: CandidateKind) -> Vec<Edge> {
    let CandidateKind::QtAttach { level, mode } = kind else { unreachable!("quasi-threshold candidates only") };
    let (path, _, _) = qt_chain(t, u).expect("checked by caller");
    let w = t.n();
    let mut fills = Vec::new();
    let top = if level < 0 { 0 } else { level as usize + 1 };
    for &b in &path[..top] {
        fills.extend(t.bag(b).iter().filter(|&&c| c != u).map(|&c| (w, c)));
    }
    for s in absorb_start(level, mode).max(1)..path.len() {
        for &c in t.children(path[s - 1]) {
            if c != path[s] {
                fills.extend(t.subtree(c).iter().map(|&x| (u, x)));
            }
        }
    }
    fills
}

/// Minimum completion of a quasi-threshold graph, without the membership check.
pub fn qt_tail_unverified(t: &QtTree, u: usize, mode: Mode) -> Result<CompletionResult, TailError> {
    let costs = qt_costs(t, u, mode)?;
    Ok(finish(costs, |k| qt_fills(t, u, k)))
}

pub fn qt_tail(t: &QtTree, u: usize, mode: Mode) -> Result<CompletionResult, TailError> {
    let result = qt_tail_unverified(t, u, mode)?;
    verify_completion(&t.expand(), GraphClass::Qt, u, &result.fill_edges)?;
    Ok(result)
}

pub fn qt_candidates(t: &QtTree, u: usize, mode: Mode) -> Result<Vec<Candidate>, TailError> {
    Ok(qt_costs(t, u, mode)?.into_iter().map(|(kind, cost)| Candidate { kind, cost, fills: normalize(qt_fills(t, u, kind)) }).collect())
}
