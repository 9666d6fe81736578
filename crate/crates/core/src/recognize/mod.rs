//! Class recognition and the structures the tail algorithms consume.

use thiserror::Error;

use crate::graph::GraphError;
use crate::pattern::Occurrence;

mod p4sparse;
mod path;
mod qt;
mod spider;
mod split;
mod threshold;

pub use p4sparse::{p4_sparse_tree, NodeLabel, P4SparseTree, TreeBuilder, TreeSpider};
pub use path::PathPartition;
pub use qt::{qt_tree, QtBuilder, QtTree};
pub use spider::{spider_partition, SpiderDescriptor, SpiderError, SpiderRole};
pub use split::{split_partition, SplitPartition};
pub use threshold::{threshold_tree, Side, ThresholdLevel, ThresholdTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("not a split graph: induced {0}")]
    NotSplit(Occurrence),
    #[error("not a threshold graph: induced {0}")]
    NotThreshold(Occurrence),
    #[error("not a quasi-threshold graph: induced {0}")]
    NotQt(Occurrence),
    #[error("not P4-sparse: vertices {0:?} induce at least two P4s")]
    NotP4Sparse(Vec<usize>),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl RecognizeError {
    /// The forbidden vertex set reported by the error, if any.
    pub fn witness(&self) -> Option<Vec<usize>> {
        match self {
            RecognizeError::NotSplit(o) | RecognizeError::NotThreshold(o) | RecognizeError::NotQt(o) => Some(o.vertices.clone()),
            RecognizeError::NotP4Sparse(set) => Some(set.clone()),
            _ => None,
        }
    }
}

pub(crate) fn fmt_ids(ids: &[usize]) -> String {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    let parts: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(" "))
}
