use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The (anti)symmetrized two-particle state has zero norm.
    #[error("preparation forbidden by the Pauli exclusion principle")]
    PauliForbidden,

    /// The normalization denominator of an identical-particle state is too
    /// small to be meaningful.
    #[error("degenerate two-particle state: normalization denominator {0:e}")]
    DegenerateState(f64),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// `|d+|^2 |d-|^2` is too small to invert the mixed-channel probability.
    #[error("ill-conditioned overlap estimate: |d+|^2 |d-|^2 = {0:e}")]
    IllConditioned(f64),

    #[error("inconsistent measurement: raw overlap estimate {0} is outside [-0.05, 1.05]")]
    InconsistentMeasurement(f64),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
