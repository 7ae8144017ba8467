use thiserror::Error;

/// Largest degree accepted anywhere in the crate.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {0} is outside 1..={MAX_DEGREE}")]
    InvalidDegree(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} is out of range for degree {degree}")]
    IndexOutOfRange { index: i64, degree: usize },
    #[error("images do not form a signed permutation: {0}")]
    NotBijective(String),
    #[error("transposition indices must be distinct, got {0} twice")]
    RepeatedIndex(usize),
    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("edge count {edges} exceeds the search cap {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("graph has no cycle")]
    AcyclicGraph,
    #[error("underlying graph is not connected")]
    Disconnected,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
