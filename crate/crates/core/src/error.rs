use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested exhaustive computation exceeds its configured guard.
    #[error("enumeration infeasible: {0}")]
    Infeasible(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A claimed partition into information sets has a singular block.
    #[error("inconsistent partition: {0}")]
    InconsistentPartition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An internal invariant failed. Seeing this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
