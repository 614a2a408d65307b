//! Maximum internal spanning trees: exact solvers, a brute-force oracle and
//! the running-time analysis of the subcubic branch-and-reduce algorithm.

pub mod analysis;
pub mod branch;
pub mod dp;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod tree;

pub use error::SolveError;
pub use graph::{generate, parse_graph, subcubic_corpus, Edge, Graph, GraphError, GraphFormat, GraphKind};
pub use tree::{validate_spanning_tree, SpanningTree, TreeError};
