use thiserror::Error;

/// Errors raised by state construction, truncation and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("input cutoff {got} is too small, need at least {needed}")]
    InsufficientCutoff { needed: usize, got: usize },

    /// Post-selection on an outcome that never occurs has no conditional state.
    #[error("detection outcome has zero probability (p = {probability:e}), conditional state undefined")]
    UndefinedState { probability: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
