use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("edge limit exceeded: graph has {edges} edges, limit is {limit}")]
    EdgeLimitExceeded { edges: usize, limit: usize },

    #[error("graph is disconnected")]
    Disconnected,

    /// Rotation system does not describe the underlying graph.
    #[error("malformed rotation system: {0}")]
    Structure(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("edge {{{0}, {1}}} is not in the triangulation")]
    UnknownEdge(usize, usize),

    #[error("contraction would degenerate: {0}")]
    NotContractible(String),

    #[error("invalid split descriptor: {0}")]
    InvalidSplit(String),

    #[error("catalog rejected: {0}")]
    Catalog(String),

    #[error("max vertices {max_vertices} is below seed size {seed_size}")]
    BelowSeedSize {
        max_vertices: usize,
        seed_size: usize,
    },

    #[error("invalid series configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
