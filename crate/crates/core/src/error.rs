use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("operation requires {required}, got partition {partition}")]
    OutOfScope {
        required: &'static str,
        partition: String,
    },

    #[error("coordinate sum {sum} does not equal 2m = {expected}")]
    CoordinateSum { sum: u64, expected: u64 },

    #[error("point has length {got}, ambient dimension is {expected}")]
    Dimension { got: usize, expected: usize },

    #[error("point is not interior to any dilation")]
    NotInterior,

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid condition-N sequence: {0}")]
    ConditionN(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Budget exhaustion marks a result as unverified rather than wrong.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
