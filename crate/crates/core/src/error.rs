use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("string length {len} exceeds the configured limit of {limit}")]
    Capacity { len: usize, limit: usize },

    #[error("Bernstein degree {requested} is below the required degree {required}")]
    Degree { requested: usize, required: usize },

    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("endpoint {0} is a root; perturb the interval")]
    EndpointRoot(String),

    #[error("invalid interval: {0}")]
    Interval(String),

    #[error("rankings are over different universes")]
    UniverseMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
