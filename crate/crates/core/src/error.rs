use thiserror::Error;

/// Errors raised while building or analysing the reduced density operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the physical or mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The ground state is not normalizable for these parameters (A - (N-1)B <= 0).
    #[error("singular model: {0}")]
    SingularModel(String),

    /// An iterative routine exceeded its iteration budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The requested working precision cannot resolve the result.
    #[error("precision error: {0}")]
    Precision(String),

    /// A quantity fell below the precision floor and cannot be analysed.
    #[error("underflow: {0}")]
    Underflow(String),

    /// No root of the characteristic polynomial has a positive real part.
    #[error("no valid root: {0}")]
    NoValidRoot(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
