use crate::numerics::SolveReport;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A construction would exceed the configured vertex budget.
    #[error("vertex budget of {budget} exceeded while building {what}")]
    Resource { budget: usize, what: String },

    /// An iterative solve failed to converge; the report carries the
    /// residual and iteration count so the caller can decide.
    #[error("solver did not converge: residual {residual} after {iterations} iterations")]
    Numeric {
        residual: f64,
        iterations: usize,
        report: SolveReport,
    },

    /// A quantity that must be monotone (up to solver tolerance) was not.
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
