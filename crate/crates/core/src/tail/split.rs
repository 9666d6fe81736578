use crate::graph::{Edge, Graph};
use crate::oracle::GraphClass;
use crate::recognize::SplitPartition;

use super::{finish, normalize, verify_completion, Candidate, CandidateKind, CompletionResult, TailError};

fn check(g: &Graph, p: &SplitPartition, u: usize) -> Result<(), TailError> {
    if p.n() != g.n() {
        return Err(TailError::StructureMismatch);
    }
    g.check_vertex(u)?;
    Ok(())
}

/// `u × (K_s \ N(u))`, empty when `u ∈ K`.
fn split_fills(g: &Graph, p: &SplitPartition, u: usize) -> Vec<Edge> {
    if p.in_clique(u) {
        return Vec::new();
    }
    p.clique_s().iter().filter(|&&k| !g.has_edge(u, k)).map(|&k| (u, k)).collect()
}

/// The closed form: nothing to add when `u ∈ K`; otherwise `u` joins the
/// clique and needs every clique vertex that has a neighbour in `S`.
pub fn split_tail_unverified(g: &Graph, p: &SplitPartition, u: usize) -> Result<CompletionResult, TailError> {
    check(g, p, u)?;
    let cost = if p.in_clique(u) { 0 } else { p.clique_s().len() - g.degree(u) };
    Ok(finish(vec![(CandidateKind::SplitFormula, cost)], |_| split_fills(g, p, u)))
}

pub fn split_tail(g: &Graph, p: &SplitPartition, u: usize) -> Result<CompletionResult, TailError> {
    let result = split_tail_unverified(g, p, u)?;
    verify_completion(g, GraphClass::Split, u, &result.fill_edges)?;
    Ok(result)
}

pub fn split_candidates(g: &Graph, p: &SplitPartition, u: usize) -> Result<Vec<Candidate>, TailError> {
    check(g, p, u)?;
    let fills = normalize(split_fills(g, p, u));
    Ok(vec![Candidate { kind: CandidateKind::SplitFormula, cost: fills.len(), fills }])
}
