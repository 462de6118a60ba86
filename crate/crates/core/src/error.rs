use thiserror::Error;

use crate::strong::OneWayCutWitness;

/// Errors raised by the solvers. Parse failures have their own type in
/// [`crate::format`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge}: self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid weighted tree: {0}")]
    InvalidTree(String),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("bridge {edge} = ({u}, {v}) admits no strong orientation")]
    Bridge { edge: usize, u: usize, v: usize },
    #[error("partial orientation has a one-way cut on {} vertices", .0.side.len())]
    OneWayCut(OneWayCutWitness),
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error("partition needs a table of {cells} cells, budget is {budget}")]
    BudgetExceeded { cells: u64, budget: u64 },
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("{what} = {size} exceeds the enumeration bound {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
