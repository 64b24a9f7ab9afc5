use thiserror::Error;

use crate::audio_steg::WavError;

/// Errors raised by the estimators and the signal pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("need {required} autocorrelation lags, only {available} available")]
    InsufficientLags { required: usize, available: usize },

    #[error("signal of length {length} is too short: {reason}")]
    SignalTooShort { length: usize, reason: String },

    #[error("matrix is not positive definite (pivot {pivot:e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error(
        "Levinson recursion is singular at step {step}: prediction error power {power:e}; \
         raise the noise floor or reduce the order"
    )]
    SingularRecursion { step: usize, power: f64 },

    #[error("normal equations are rank deficient at order {order}; reduce the order")]
    RankDeficient { order: usize },

    #[error("estimated noise power {power:e} is negative beyond rounding tolerance")]
    NegativeNoisePower { power: f64 },

    #[error("quadratic form has a non-negligible imaginary part ({imag:e} vs real {real:e})")]
    ComplexResidue { real: f64, imag: f64 },

    #[error("{method} needs the raw signal, not an autocorrelation sequence")]
    RequiresSignal { method: &'static str },

    #[error("carrier has {available} samples, {requested} requested")]
    CarrierTooShort { available: usize, requested: usize },

    #[error(transparent)]
    Wav(#[from] WavError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
