use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter tuple violates the documented invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Reverse iteration found no split index satisfying the budget equation.
    #[error("no valid split index j for budget {q1}")]
    NoValidSplit { q1: i64 },

    /// Reverse iteration was asked to undo a step of an initial state.
    #[error("nothing to reverse: no processed elements")]
    NothingToReverse,

    /// A reverse step could not locate the block that was processed last.
    #[error("reverse step failed: {0}")]
    ReverseFailed(String),

    /// A per-iteration invariant of the processing map does not hold.
    #[error("invariant violated after step {step}: {detail}")]
    InvariantViolated { step: usize, detail: String },

    /// The object is not in the image of the processing map.
    #[error("not in the image of phi: condition ({condition}) fails: {reason}")]
    NotInImage { condition: u8, reason: String },

    /// The object is outside the domain of the sign-reversing map.
    #[error("outside the domain of the sign-reversing map: {0}")]
    NotInDomain(String),

    #[error("samples are not a polynomial of degree {degree}: {reason}")]
    NotPolynomial { degree: usize, reason: String },
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
