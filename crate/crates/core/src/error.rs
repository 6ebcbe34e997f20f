use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration or input failed a normalization/shape check.
    #[error("validation error: {0}")]
    Validation(String),

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested computation exceeds a configured cost cap.
    #[error("cost guard: {what} of size {size} exceeds limit {limit}; {detail}")]
    CostGuard {
        what: &'static str,
        size: u128,
        limit: u128,
        detail: String,
    },

    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_cost_guard(&self) -> bool {
        matches!(self, Error::CostGuard { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
