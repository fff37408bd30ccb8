use thiserror::Error;

/// Errors surfaced by the library. Degenerate LP outcomes are statuses,
/// not errors; everything here is a genuine misuse of the API or bad data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal: {0}")]
    BadRational(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("cone mismatch between operands")]
    ConeMismatch,

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("cone has empty interior")]
    EmptyInterior,

    #[error("invalid problem data: {0}")]
    InvalidProblem(String),

    #[error("problem is infeasible")]
    Infeasible,

    #[error("problem is unbounded")]
    Unbounded,

    #[error("invalid market model: {0}")]
    InvalidMarket(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
