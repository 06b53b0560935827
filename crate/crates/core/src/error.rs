use thiserror::Error;

use crate::detect::BtCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set has undefined codegree")]
    EmptySet,

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{u} and {v} are not adjacent")]
    NotAdjacent { u: usize, v: usize },

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("invalid bipartition: {0}")]
    Bipartition(String),

    #[error("precondition violated: graph contains B_{t}")]
    Precondition { t: usize, certificate: BtCertificate },

    #[error("embedding condition fails at edge ({x}, {y})")]
    EmbedCondition { x: usize, y: usize },

    #[error("host graph has no edges")]
    EmptyHost,

    #[error("malformed operation sequence: {0}")]
    MalformedSpec(String),

    #[error("search budget of {budget} nodes exhausted; best found {lower_bound}")]
    BudgetExhausted {
        budget: u64,
        lower_bound: usize,
        nodes_explored: u64,
    },
}
