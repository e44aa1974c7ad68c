use thiserror::Error;

use crate::graph::VertexSet;
use crate::separation::Separation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{requested} vertices requested but the limit is {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("invalid separation: {0}")]
    InvalidSeparation(String),

    #[error("incomplete profile: separation {missing:?} is not oriented")]
    IncompleteProfile { missing: Separation },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("{block:?} is not a {k}-block")]
    InvalidBlock { block: VertexSet, k: usize },

    #[error("no separation distinguishes two profiles of the set")]
    NoKappa,

    #[error("invalid torso: {0}")]
    InvalidTorso(String),

    #[error("malformed tree-decomposition: {0}")]
    Structure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn lemma(msg: impl Into<String>) -> Self {
        Error::LemmaViolation(msg.into())
    }
}
