use thiserror::Error;

/// A syntax error in a textual interval set or dyadic literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dyadic value out of range: {0}")]
    DyadicRange(String),
    #[error("invalid ultrafilter point: {0}")]
    InvalidPoint(String),
    #[error("invalid condition: {0}")]
    InvalidCondition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A (custom) family's oracle could not classify the element.
    #[error("oracle returned no answer for {0}")]
    OracleUnknown(String),
    /// A family's oracle returned an answer whose inclusion does not hold.
    #[error("oracle answer failed its inclusion check: {0}")]
    OracleUnsound(String),
    #[error("certificate check failed: {0}")]
    Check(String),
    #[error("session line {line}: {message}")]
    Session { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
