use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A design, family or code violates a structural invariant.
    #[error("invalid structure: {0}")]
    Structure(String),

    /// A probability distribution is malformed.
    #[error("invalid distribution: {0}")]
    Distribution(String),

    /// A design did not satisfy the hypotheses of the requested conversion.
    #[error("design rejected: {0}")]
    Rejected(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
