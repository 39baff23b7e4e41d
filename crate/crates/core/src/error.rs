use thiserror::Error;

/// Errors raised across the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation point exceeds the precision budget of the series evaluators,
    /// or a scan range is too short to cover the requested eigenvalues.
    #[error("range error: {what} (limit {limit}, requested {requested})")]
    Range {
        what: String,
        limit: f64,
        requested: f64,
    },

    /// An iterative method failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Two independent evaluation routes disagree beyond their tolerance.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// A mass-type matrix is not numerically positive definite.
    #[error("conditioning error: {0}")]
    Conditioning(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
