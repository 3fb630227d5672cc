use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid ribbon structure: {0}")]
    Invalid(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arc `{0}`")]
    UnknownArc(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("digraph is not Eulerian: vertex `{0}` has in-degree != out-degree")]
    NotEulerian(String),

    #[error("chip configuration must sum to zero, got {0}")]
    NonZeroSum(i64),

    #[error("chip configuration has {got} entries, digraph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("not an Eulerian tour: {0}")]
    NotATour(String),

    #[error("tour is not compatible with the rotation at vertex `{0}`")]
    Incompatible(String),

    #[error("not an arborescence: {0}")]
    NotArborescence(String),

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("edge set is not a quasi-tree")]
    NotQuasiTree,

    #[error("rotor configuration is not a unicycle: {0}")]
    NotUnicycle(String),

    #[error("edge set is not a cycle: {0}")]
    NotACycle(String),

    #[error("digraph is not a bidirected double: {0}")]
    NotBidirected(String),

    #[error("rotor at vertex `{0}` is not one of its out-arcs")]
    BadRotor(String),

    #[error("vertex `{0}` has no out-arcs to route along")]
    NoOutArcs(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
