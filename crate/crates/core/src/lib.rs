//! Minimum completions after a pendant edge ("tail") `uw` is added to a
//! graph in one of four hereditary classes: split, threshold,
//! quasi-threshold and P4-sparse.
//!
//! Each class has a recognizer that returns the structure the completion
//! algorithm works on ([`recognize`]), a linear-time completion routine
//! ([`tail`]), and a slow definitional oracle ([`oracle`]) used to check
//! both on small instances.

pub mod bench;
pub mod fuzz;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod recognize;
pub mod small;
pub mod tail;

pub use generate::{generate, generate_certificate, pick_tail_vertex, Certificate, GenError, GenSpec, Knobs, SplitMix64};
pub use graph::{edge, Edge, Graph, GraphError};
pub use oracle::{find_violation, is_member, min_completion, min_tail_completion, GraphClass, Oracle, OracleError, OracleResult, Strategy};
pub use pattern::{find_induced, Occurrence, PatternKind};
pub use recognize::{
    p4_sparse_tree, qt_tree, spider_partition, split_partition, threshold_tree, P4SparseTree, PathPartition, QtTree, RecognizeError,
    SpiderDescriptor, SplitPartition, ThresholdTree,
};
pub use tail::{
    p4_tail, qt_tail, solve, split_tail, threshold_tail, verify_completion, Candidate, CandidateKind, CompletionResult, Mode, SpiderCase,
    TailError,
};
