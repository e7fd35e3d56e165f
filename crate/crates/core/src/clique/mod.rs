//! Exact maximum-clique search on small dense graphs.

mod graph;
mod solver;

pub use graph::UndirectedGraph;
pub use solver::{
    enumerate_maximum_cliques, greedy_clique_lower_bound, max_clique, Clique, CliqueSearch,
    DEFAULT_ENUMERATION_LIMIT, DEFAULT_NODE_BUDGET,
};
