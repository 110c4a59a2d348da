use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty coefficient sequence")]
    Empty,

    #[error("power iteration did not converge after {iterations} iterations (best estimate {estimate}, residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("power iteration ({power}) and dense SVD ({dense}) disagree")]
    CrossCheck { power: f64, dense: f64 },

    #[error("eigen-solver failure: {0}")]
    EigenSolver(String),

    #[error("non-finite integrand at r = {r}, theta = {theta}")]
    NonFinite { r: f64, theta: f64 },

    #[error("unknown series id `{0}`")]
    UnknownSeries(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
