use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("property is vacuous: {0}")]
    PropertyVacuous(String),
    #[error("budget exhausted after {0} steps")]
    BudgetExhausted(usize),
    #[error("search failed: best residual {best_residual:.3e} after {iterations} iterations")]
    SearchFailed {
        best_residual: f64,
        iterations: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
