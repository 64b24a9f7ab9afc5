//! Power-spectrum estimation for short records of sinusoids in noise.
//!
//! Five estimators are provided: the periodogram and Blackman-Tukey
//! (nonparametric), Capon's minimum-variance method, and Yule-Walker and
//! modified-covariance autoregressive fits. Around them sit test-signal
//! synthesis, a 16-bit WAV reader/writer, a hidden-tone detector for audio
//! carriers, and reproducible experiment cases with Monte-Carlo detection
//! rates.
//!
//! All frequencies are normalized, in cycles per sample, on `[0, 0.5]`.

#![allow(clippy::needless_range_loop)]

pub mod audio_steg;
pub mod autocorr;
pub mod error;
pub mod estimate;
pub mod experiments;
pub mod linalg;
pub mod nonparametric;
pub mod parametric;
pub mod peaks;
pub mod rng;
pub mod signal_model;
pub mod spectrum;

pub use audio_steg::{detect_hidden_tone, read_wav, write_wav, PeakReport, WavAudio, WavError};
pub use autocorr::{biased_acf, AcfSequence, AcfSource};
pub use error::{Error, Result};
pub use estimate::{default_order, estimate, estimate_from_acf};
pub use experiments::{
    monte_carlo, run_case, CaseId, CaseResult, DetectionTable, ExperimentCase, Format,
};
pub use parametric::ArModel;
pub use peaks::Peak;
pub use signal_model::Signal;
pub use spectrum::{FrequencyGrid, Method, SpectrumEstimate};
