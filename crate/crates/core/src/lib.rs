//! Exact metric dimension, weak total metric dimension and weak total
//! resolving number of small connected graphs, with tree formulas,
//! graph families and an exhaustive statement checker.

pub mod construct;
pub mod error;
pub mod format;
pub mod graph;
#[cfg(test)]
mod proptests;
pub mod resolve;
pub mod solve;
pub mod subsets;
pub mod theorems;
pub mod tree;

pub use construct::Family;
pub use error::{Error, Result};
pub use graph::{
    classify_vertices, find_twins, DistanceMatrix, Graph, Twins, VertexClassification,
};
pub use resolve::{
    is_resolving_set, is_wtr_set, is_wtr_set_via_lemma1, wtr_violations, Code, VertexSet,
};
pub use solve::{
    metric_dimension, resolvability_profile, weak_total_metric_dimension,
    weak_total_resolving_number, Limits, ResolvabilityProfile, SearchMode, Searcher,
};
pub use theorems::{
    check_graph, run_suite, run_suite_with, theorem_ids, Corpus, Outcome, SuiteOptions,
    TheoremReport, Verdict,
};
pub use tree::{analyze_tree, decompose_tree, TreeAnalysis, TreeBounds, TreeDecomposition};
