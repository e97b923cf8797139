use thiserror::Error;

use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("symmetry violation: {0} appears in row {1} but {1} is not in row {0}")]
    Asymmetric(VertexId, VertexId),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("edge flip conflict: ({0}, {1}) already present")]
    FlipConflict(VertexId, VertexId),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("derivation failed: {0}")]
    Derivation(String),

    #[error("pattern mismatch: {0}")]
    Pattern(String),

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("principle violation: {0}")]
    Principles(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
