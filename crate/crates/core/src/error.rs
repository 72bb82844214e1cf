use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("vertex {index} is affinely dependent on the preceding vertices")]
    Degenerate { index: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("brute-force scan needs {needed} candidate points, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error(
        "counts are not the Ehrhart sequence of an integral polytope: delta_{index} = {value}"
    )]
    InconsistentCounts { index: usize, value: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("malformed polytope document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
