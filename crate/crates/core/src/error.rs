use std::fmt;

use thiserror::Error;

/// Why a family fails the "at least two members, not trivially t-intersecting" hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    Empty,
    Singleton,
    Trivial,
}

impl fmt::Display for Degenerate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degenerate::Empty => f.write_str("family is empty"),
            Degenerate::Singleton => f.write_str("family has a single member"),
            Degenerate::Trivial => f.write_str("family is a trivial t-intersecting family"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis not met: {0}")]
    Degenerate(Degenerate),
    #[error("size limit exceeded: {limit} is {value}, cap is {cap}")]
    SizeLimit {
        limit: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    /// A candidate counterexample that did not survive independent re-checking.
    #[error("candidate finding failed re-verification: {0}")]
    Unverified(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
