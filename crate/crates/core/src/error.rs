use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field degree {0}; supported degrees are 1, 2, 3, 4, 8, 16, 24, 32, 48, 64")]
    UnsupportedDegree(u32),
    #[error("field elements belong to different fields (GF(2^{left}) vs GF(2^{right}))")]
    ConfigMismatch { left: u32, right: u32 },
    #[error("value {bits:#x} is not a canonical element of GF(2^{degree})")]
    NonCanonical { bits: u64, degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("duplicate interpolation point")]
    DuplicatePoint,
    #[error("GF(2^{degree}) is too small for {needed} distinct evaluation points")]
    InsufficientField { degree: u32, needed: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid set family: {0}")]
    InvalidFamily(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph is not regular")]
    NotRegular,
    #[error("{labels} labels exceed the supported maximum of {max}")]
    TooManyLabels { labels: usize, max: usize },
    #[error("instance too large for brute force: {0}")]
    InstanceTooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
