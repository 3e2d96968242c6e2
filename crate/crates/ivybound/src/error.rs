use thiserror::Error;

/// Errors surfaced by graph construction, parsing, and the algorithms on top.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex index {0} out of range for graph with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-adjacency on vertex {0} is not allowed")]
    SelfAdjacency(usize),
    #[error("vertices {0} and {1} already carry an adjacency")]
    ConflictingAdjacency(usize, usize),
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("unknown vertex name {0:?}")]
    UnknownName(String),
    #[error("graph contains a directed cycle")]
    DirectedCycle,
    #[error("operation requires an undirected graph but a directed adjacency is present")]
    DirectedEdgesPresent,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("DAG has a v-structure")]
    HasVStructures,
    #[error("ordering is not a topological ordering of the DAG")]
    NotTopological,
    #[error("edge {0} -> {1} is not directed in the graph")]
    EdgeNotDirected(usize, usize),
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
