use alloc::string::String;
use alloc::vec::Vec;

use crate::hypergraph::Vertex;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {index} has {found} vertices, expected {k}")]
    WrongEdgeSize { index: usize, found: usize, k: usize },
    #[error("edge {index} repeats a vertex")]
    RepeatedVertex { index: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<Vertex>),
    #[error("uniformity {0} unsupported (need 2 <= k <= 8)")]
    UnsupportedUniformity(usize),
    #[error("hypergraph is not linear")]
    NotLinear,
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("not a permutation of the edge indices")]
    InvalidPermutation,
    #[error("{0} edges is too many for exhaustive search")]
    TooManyEdges(usize),
    #[error("unknown motif {0:?}")]
    UnknownMotif(String),
    #[error("search budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("n = {n} is not divisible by {d}")]
    Divisibility { n: usize, d: usize },
    #[error("template retries exhausted after {attempts} attempts ({detail})")]
    RetriesExhausted { attempts: usize, detail: String },
    #[error("{phase}: {detail}")]
    Phase { phase: &'static str, detail: String },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn phase(phase: &'static str, detail: impl Into<String>) -> Self {
        Error::Phase { phase, detail: detail.into() }
    }
}
