use thiserror::Error;

/// Errors surfaced by the library. Each variant maps to a CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (bad permutation text, unknown step character, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A brute-force operation was asked to exceed its configured limit.
    #[error("resource limit exceeded: {what} requires n <= {limit}, got {requested}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    /// An operation was called on an input outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Exact integer arithmetic overflowed its fixed width.
    #[error("arithmetic overflow: {0}")]
    Arithmetic(String),

    /// An internal consistency check failed (e.g. a closed form did not
    /// divide exactly). Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// CLI exit code for this error: 2 invalid input, 3 resource limit,
    /// 1 everything else (assertion-style failures).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Precondition(_) => 2,
            Error::ResourceLimit { .. } => 3,
            Error::Arithmetic(_) | Error::Invariant(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
