//! Coloring bounded-degree graphs with k colors, generalized over color
//! systems: per-vertex lists of k labels with a partial matching on every
//! edge. Plain coloring, list coloring, correspondence coloring, and
//! signed-graph coloring are all instances of the same engine.
//!
//! A connected component of maximum degree at most k is colored in linear
//! time unless it is a clique on k+1 vertices or, for k = 2, an odd cycle;
//! those components are reported as exceptions. The [`oracle`] module
//! provides exhaustive brute-force ground truth for small instances.
//!
//! Graphs and color systems are immutable after construction and safe to
//! share across threads; each engine run owns its coloring.

pub mod color;
pub mod engine;
pub mod graph;
pub mod oracle;
mod scratch;

pub use color::{ColorSystem, Coloring, Sign, SignedGraph, SystemError};
pub use engine::{
    brooks_color, brooks_color_with_stats, choose_bridge_color, choose_case1_pair, color_case1,
    color_case2, grow_maximal_path, low_degree_dfs_order, path_color, BrooksOutcome, Case2Outcome,
    ComponentException, EngineError, PathState, RunStats,
};
pub use graph::{ComponentPartition, EdgeId, Graph, GraphError, Vertex};
pub use oracle::{OracleBudget, OracleError};
