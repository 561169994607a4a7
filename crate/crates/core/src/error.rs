use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A text file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A polytope failed one of its structural invariants.
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    /// A configured resource limit was hit. Never a silent truncation.
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    /// A mathematical check failed. The message names the witness.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    /// True for errors caused by the caller (bad input, exhausted budgets)
    /// rather than by a failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Verification(_))
    }
}
