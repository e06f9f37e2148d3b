use thiserror::Error;

use crate::check::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: member has {found} elements, expected {expected}")]
    Uniformity {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("member {member} is contained in no trace")]
    KernelCoverage { member: usize },

    #[error("family is not (k,u)-intersecting; witness {}", .0)]
    NotIntersecting(Witness),

    #[error("capacity exceeded: {what} is {size}, cap is {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
