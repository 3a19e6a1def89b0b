use thiserror::Error;

/// Errors raised by the kernel and the front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("naturality fails: {0}")]
    NotNatural(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("not an equivalence: {0}")]
    NotInW(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("2-cell is not invertible")]
    NotInvertible,

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by a failed
    /// mathematical precondition.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidCategory(_)
                | Error::InvalidFunctor(_)
                | Error::NotNatural(_)
                | Error::Parse { .. }
                | Error::UnknownName(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
