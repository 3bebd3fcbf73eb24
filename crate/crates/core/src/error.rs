use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series too short: {len} samples, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("non-finite value at sample {index}, component {component}")]
    NonFinite { index: usize, component: usize },

    #[error("sample interval must be finite and positive")]
    InvalidSampleInterval,

    #[error("signal has zero energy")]
    ZeroEnergy,

    #[error("semi-minor axis exceeds semi-major axis (or is negative) at sample {index}")]
    AxisOrder { index: usize },

    #[error(
        "matrix is not a proper rotation (orthogonality residual {residual:e}, determinant {determinant})"
    )]
    NotProperRotation { residual: f64, determinant: f64 },

    #[error(
        "{requested} tapers requested; at most {max} are well concentrated for time-bandwidth {time_bandwidth}"
    )]
    TooManyTapers {
        requested: usize,
        max: usize,
        time_bandwidth: f64,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
