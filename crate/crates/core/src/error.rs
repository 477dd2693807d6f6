use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group SU({0}); only SU(2) and SU(3) are modelled")]
    UnsupportedGroup(usize),

    #[error("point {point:?} lies outside the alcove of level {level}")]
    OutsideAlcove { point: Vec<f64>, level: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("alcove folding did not converge after {0} iterations")]
    FoldNonConvergence(usize),

    #[error("eigen-decomposition failed: {0}")]
    Eigen(String),

    #[error("harmonic function vanishes at the starting point")]
    DegenerateStart,

    #[error("rejection envelope violated: density {density} exceeds envelope {envelope} at {point:?}")]
    EnvelopeViolation {
        density: f64,
        envelope: f64,
        point: Vec<f64>,
    },

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("unknown experiment '{0}'")]
    UnknownExperiment(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
