use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    UniformityTooSmall(usize),

    #[error("{n} vertices cannot carry edges of size {r}")]
    TooFewVertices { r: usize, n: usize },

    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    UniformityMismatch {
        edge: Vec<Vertex>,
        got: usize,
        expected: usize,
    },

    #[error("expected a {expected}-graph, got a {got}-graph")]
    WrongUniformity { expected: usize, got: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("vertex set {0:?} repeats a vertex")]
    RepeatedVertex(Vec<Vertex>),

    #[error("set of size {size} is invalid here: {reason}")]
    InvalidSetSize { size: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Precondition(String),

    #[error("{what}: {n} vertices exceeds the exact limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{0:?} is not an edge")]
    NotAnEdge(Vec<Vertex>),

    #[error("not a Steiner triple system: pair {pair:?} lies in {count} triples")]
    NotSteiner { pair: (Vertex, Vertex), count: usize },

    #[error("unknown motif `{0}` (expected k4, k4-, c5, k<t> with t >= 5, or clique<r>)")]
    UnknownMotif(String),

    #[error("{0}")]
    Greedy(String),

    #[error("search budget exhausted")]
    BudgetExceeded,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
