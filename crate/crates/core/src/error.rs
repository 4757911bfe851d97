use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("operation does not accept multigraphs")]
    Multigraph,
    #[error("vertex set is invalid: {0}")]
    InvalidVertexSet(String),
    #[error("parts do not partition the vertex set: {0}")]
    InvalidPartition(String),
    #[error("{what}: size {size} exceeds cap {cap} (raise it with EQBCAST_CAPS)")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("set is not a dominating set")]
    NotDominating,
    #[error("no feasible cover of kind {0}")]
    Infeasible(String),
    #[error("no perfect matching with the required structure: {0}")]
    NoPerfectMatching(String),
    #[error("construction failed a postcondition: {0}")]
    Construction(String),
    #[error("word of length {len} exceeds the host capacity of {max} bits")]
    WordTooLong { len: usize, max: usize },
    #[error("host has {copies} copies, fewer than 2^{k}")]
    TooFewCopies { copies: u128, k: usize },
    #[error("classes {0} and {1} are not adjacent in the pattern graph")]
    NotPatternEdge(usize, usize),
    #[error("host pattern does not match the protocol graph")]
    PatternMismatch,
    #[error("sender {vertex} produced {got} bits but declared {declared}")]
    StaticnessViolation { vertex: usize, declared: usize, got: usize },
    #[error("graph has no universal vertex")]
    NoUniversalVertex,
    #[error("input assignment mismatch: {0}")]
    AssignmentMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
