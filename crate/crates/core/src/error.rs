use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit codes: `InvalidArgument` is a usage
/// error, `BudgetExceeded` is an enumeration budget failure, and the
/// numerical variants are contract failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series nome units differ: {left} vs {right}")]
    UnitMismatch { left: &'static str, right: &'static str },

    #[error("enumeration needs ~{estimate:.3e} candidate vectors, budget is {budget}")]
    BudgetExceeded { estimate: f64, budget: u64 },

    #[error("Im(tau) = {im} is below the evaluation floor {floor}")]
    BelowImaginaryFloor { im: f64, floor: f64 },

    #[error("cached series order {available} is too small, need {required} for the requested tolerance")]
    InsufficientOrder { available: usize, required: usize },

    #[error("residual check failed on the {path} path: {value:.3e} > {tolerance:.3e}")]
    ResidualFailure { path: &'static str, value: f64, tolerance: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
