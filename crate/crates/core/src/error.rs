use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("item {index}: {reason}")]
    InvalidItem { index: usize, reason: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} needs {needed} units of work, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
