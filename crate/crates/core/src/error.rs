use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inconsistent parameters: {0}")]
    InconsistentParams(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("query point ({site}, {time}) sits exactly on a rung")]
    PointOnRung { site: i64, time: f64 },
    #[error("invalid rung configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid sampler schedule: {0}")]
    ScheduleInvalid(String),
    #[error("nested box does not fit: {0}")]
    BoxTooSmall(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("no rung-avoiding path: {0}")]
    PathBlocked(String),
    #[error("Hilbert space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("seed is annihilated: normalization {0:e}")]
    SingularNormalization(f64),
    #[error("insertion times are not strictly increasing inside (0, beta)")]
    TimeOrderViolation,
    #[error("key mismatch: {0}")]
    KeyMismatch(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
