//! Reachability-optimal orientations of undirected and mixed graphs.
//!
//! * [`tree::max_reachability_orientation`] orients a connected graph to
//!   maximize the number of ordered pairs joined by a directed path, in
//!   quadratic time, via the bridge tree and a centroid partition.
//! * [`wto`] solves the weighted tree version for large weights, exactly or
//!   within `1 - epsilon`.
//! * [`min_reach`] computes the minimum reachability and the comparability
//!   completion number for small graphs.
//! * [`strong`] gives Robbins orientations and completes partial
//!   orientations to strong ones.
//! * [`gadgets`] builds and checks the hardness reductions.
//!
//! Loops that parallelize run on rayon when the `parallel` feature is on
//! (the default); see [`exec`].

pub mod condense;
pub mod error;
pub mod exec;
pub mod format;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod min_reach;
pub mod oracle;
pub mod reach;
pub mod strong;
pub mod tree;
pub mod wto;

pub use condense::{condense, find_bridges, CondensationMap, WeightedTree};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{Digraph, EdgeState, Graph, MixedGraph, Orientation};
pub use reach::{count_reachability, is_acyclic, is_strongly_connected, ReachabilityReport};
pub use tree::{max_reachability_orientation, optimal_tree_orientation, MuReport, TreeOrientation};
