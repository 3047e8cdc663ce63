use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("malformed input: {0}")]
    Structural(String),

    #[error("construction invariant violated: {0}")]
    Construction(String),

    #[error("projection is not regular: {0}")]
    NonRegularProjection(String),

    #[error("diagram has {crossings} crossings, above the configured limit of {limit}")]
    CrossingLimit { crossings: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
