use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// The inputs are valid but make the requested quantity vacuous
    /// (for example every coefficient is zero).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A search exhausted its budget without meeting its target.
    #[error("no convergence: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    /// Short machine-readable name, used in the JSON error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Degenerate(_) => "degenerate",
            Error::Convergence(_) => "convergence",
        }
    }
}
