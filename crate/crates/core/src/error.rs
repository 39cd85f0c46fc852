use thiserror::Error;

use crate::graph::Color;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{color} class is not a disjoint union of cliques")]
    NotCliqueUnion { color: Color },
    #[error("{color} class is not an independent set")]
    NotIndependent { color: Color },
    #[error("blow-up factor must be at least 2, got {0}")]
    BlowUpFactor(usize),
    #[error("graph has {n} vertices, above the search bound of {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("graph is not a member of the class")]
    NotMember,
    #[error("invalid amalgamation problem: {0}")]
    InvalidProblem(String),
    #[error("engine precondition violated: {0}")]
    Precondition(String),
    /// An amalgamation engine reached a branch that its correctness argument
    /// rules out. Always a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid document: {0}")]
    Format(String),
}
