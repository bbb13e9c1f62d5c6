use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("phase mismatch: {left} vs {right}")]
    PhaseMismatch { left: u32, right: u32 },

    #[error("integer overflow in exact arithmetic ({context}); inputs exceed the 128-bit coefficient range")]
    Overflow { context: &'static str },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search space of {size} vectors exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("matrices do not commute (HM != MH)")]
    NotCommuting,

    #[error("matrices are not amicable (HM* != MH*)")]
    NotAmicable,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not a Butson Hadamard matrix")]
    NotHadamard,

    #[error("vector is not bent for the given matrix")]
    NotBent,

    #[error("matrix is not of Bush type with block size {0}")]
    NotBushType(usize),
}

impl Error {
    pub(crate) fn overflow(context: &'static str) -> Self {
        Error::Overflow { context }
    }
}
