use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter or input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative eigensolver did not converge for the eigenvalue at `index`.
    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    NonConvergence { index: usize, iterations: usize },

    /// An algebraic invariant was broken; indicates a bug rather than bad input.
    #[error("structural error: {0}")]
    Structural(String),

    /// Too few Monte Carlo replicas for the requested statistic to be interpretable.
    #[error("insufficient replicas: {0}")]
    InsufficientReps(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
