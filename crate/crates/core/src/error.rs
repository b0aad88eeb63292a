use thiserror::Error;

/// Errors raised by constructors, splitters and constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a perfect matching: {0}")]
    InvalidMatching(String),
    #[error("inflation arity mismatch: skeleton has {skeleton} entries, got {parts} parts")]
    ArityMismatch { skeleton: usize, parts: usize },
    #[error("inflation part {0} is empty")]
    EmptyPart(usize),
    #[error("arcs share an endpoint")]
    SharedEndpoint,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("colorer returned an invalid certificate: {0}")]
    InvalidColorer(String),
    #[error("internal guarantee failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
