use thiserror::Error;

use crate::recognize::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// A documented precondition does not hold; the witness, when present,
    /// is the violated inequality that rules the input out.
    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        witness: Option<Box<Witness>>,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness: witness.map(Box::new),
        }
    }
}
