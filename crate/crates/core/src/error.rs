use thiserror::Error;

/// Errors raised across the library.
///
/// `Refused*` variants separate inputs that are mathematically impossible from
/// inputs that are merely outside what this crate implements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field GF({p}^{k}) is too large for this representation")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different fields: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("budget exceeded: {needed} fiber steps needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("refused (impossible): {0}")]
    RefusedImpossible(String),

    #[error("refused (outside implemented range): {0}")]
    RefusedScope(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
