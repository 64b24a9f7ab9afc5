//! Hiding a tone in an audio carrier and recovering its frequency.

mod wav;

pub use wav::{read_wav, write_wav, EncodedWav, WavAudio, WavError};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::estimate::estimate;
use crate::peaks::{find_peaks, Peak};
use crate::rng::standard_normals;
use crate::signal_model::Signal;
use crate::spectrum::{FrequencyGrid, Method};

/// Carrier length used by the tone-recovery experiments.
pub const DEFAULT_CARRIER_LENGTH: usize = 1000;

/// Default prominence threshold, as a multiple of the median spectrum value.
pub const DEFAULT_PROMINENCE: f64 = 5.0;

/// Sample rate stamped on synthetic carriers when written to disk.
pub const SYNTHETIC_SAMPLE_RATE: u32 = 8000;

/// Smoothing taps applied to white noise to build the synthetic carrier.
pub const CARRIER_TAPS: [f64; 3] = [0.25, 0.5, 0.25];

/// The first `length` samples of `audio`.
pub fn prepare_carrier(audio: &WavAudio, length: usize) -> Result<Signal> {
    if length == 0 {
        return Err(invalid("carrier length must be at least 1"));
    }
    if audio.samples.len() < length {
        return Err(Error::CarrierTooShort {
            available: audio.samples.len(),
            requested: length,
        });
    }
    Signal::new(audio.samples[..length].to_vec())
}

/// Seeded colored noise: unit-variance white Gaussian noise passed through
/// [`CARRIER_TAPS`], rescaled to unit variance in expectation.
pub fn synthetic_carrier(length: usize, seed: u64) -> Result<Signal> {
    if length == 0 {
        return Err(invalid("carrier length must be at least 1"));
    }
    let w = standard_normals(seed, length + CARRIER_TAPS.len() - 1);
    let gain = 1.0 / CARRIER_TAPS.iter().map(|t| t * t).sum::<f64>().sqrt();
    let samples = w
        .windows(CARRIER_TAPS.len())
        .map(|win| {
            gain * win
                .iter()
                .zip(CARRIER_TAPS.iter().rev())
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .collect();
    Signal::new(samples)
}

/// Rescales to unit RMS. An all-zero signal is returned unchanged.
pub fn normalize_rms(x: &Signal) -> Signal {
    let rms = x.rms();
    if rms > 0.0 {
        x.scaled(1.0 / rms)
    } else {
        x.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub method: Method,
    pub order_used: usize,
    /// Sorted by descending power.
    pub peaks: Vec<Peak>,
}

impl PeakReport {
    /// The reported peak closest to `freq`, if one lies within `tolerance`.
    pub fn peak_near(&self, freq: f64, tolerance: f64) -> Option<&Peak> {
        self.peaks
            .iter()
            .filter(|p| (p.frequency - freq).abs() <= tolerance)
            .min_by(|a, b| {
                (a.frequency - freq)
                    .abs()
                    .total_cmp(&(b.frequency - freq).abs())
            })
    }
}

/// Estimates the spectrum of `x` and reports its prominent peaks.
///
/// A peak qualifies when its prominence is at least `prominence` times the
/// median of the spectrum, so the result does not depend on overall gain.
pub fn detect_hidden_tone(
    x: &Signal,
    method: Method,
    order: usize,
    grid: &FrequencyGrid,
    prominence: f64,
) -> Result<PeakReport> {
    if !(prominence.is_finite() && prominence >= 0.0) {
        return Err(invalid(
            "prominence threshold must be finite and non-negative",
        ));
    }
    let spectrum = estimate(x, method, order, grid)?;
    Ok(PeakReport {
        method,
        order_used: order,
        peaks: find_peaks(grid.points(), spectrum.values(), prominence),
    })
}
