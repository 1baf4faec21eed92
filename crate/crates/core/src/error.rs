use thiserror::Error;

use crate::graph::Triangle;
use crate::rainbow::RainbowWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{0} vertices requested; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("asymmetric adjacency: {1} is in the row of {0} but not the reverse")]
    Asymmetric(usize, usize),
    #[error("triangle needs three distinct vertices, got {0:?}")]
    DegenerateTriangle([usize; 3]),
    #[error("cannot delete the only vertex")]
    LastVertex,
    #[error("vertex counts differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("vertex map is not a permutation")]
    NotAPermutation,
    #[error("C({0},2) exceeds 64 bits")]
    TooManyPairs(usize),
    #[error("bits set beyond the last pair index")]
    StrayBits,
    #[error("expected {expected} edge bytes, found {found}")]
    ByteLength { expected: usize, found: usize },
    #[error("invalid hex: {0}")]
    BadHex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("a system needs at least one graph")]
    NoGraphs,
    #[error("at most 64 graphs are supported, got {0}")]
    TooManyGraphs(usize),
    #[error("graph {index} has {found} vertices, expected {expected}")]
    OrderMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("operation needs exactly {expected} graphs, got {found}")]
    WrongGraphCount { expected: usize, found: usize },
    #[error("{0:?} is not a 3-set of vertices")]
    NotATriple(Vec<usize>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertError {
    #[error("system is not rainbow-triangle-free: {0}")]
    NotRbtFree(RainbowWitness),
    #[error("graph is not triangle-free: {0}")]
    NotTriangleFree(Triangle),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CertError {
    pub(crate) fn pre(msg: impl Into<String>) -> CertError {
        CertError::Precondition(msg.into())
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search space 2^{needed} exceeds the enumeration budget 2^{budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed input at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected {expected} input, found the other system format")]
    WrongFormat { expected: &'static str },
    #[error("graph {graph} is invalid")]
    Graph {
        graph: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
