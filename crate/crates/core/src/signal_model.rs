//! Test-signal synthesis: sinusoids in white Gaussian noise, exact
//! autocorrelation sequences, and tone embedding into a carrier.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::autocorr::{AcfSequence, AcfSource};
use crate::error::{invalid, Error, Result};
use crate::rng::standard_normals;

/// A finite, non-empty sequence of real samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Signal {
    samples: Vec<f64>,
}

impl Signal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::SignalTooShort {
                length: 0,
                reason: "a signal needs at least one sample".into(),
            });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn scaled(&self, gain: f64) -> Signal {
        Signal {
            samples: self.samples.iter().map(|s| s * gain).collect(),
        }
    }

    pub fn rms(&self) -> f64 {
        (self.samples.iter().map(|s| s * s).sum::<f64>() / self.len() as f64).sqrt()
    }

    pub fn peak_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

impl TryFrom<Vec<f64>> for Signal {
    type Error = Error;

    fn try_from(samples: Vec<f64>) -> Result<Self> {
        Signal::new(samples)
    }
}

impl From<Signal> for Vec<f64> {
    fn from(s: Signal) -> Self {
        s.samples
    }
}

/// Two sinusoids plus white Gaussian noise:
/// `x(n) = A cos(2π f1 n) + B cos(2π f2 n) + w(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinusoidSpec {
    pub amp_a: f64,
    pub amp_b: f64,
    /// Cycles per sample.
    pub freq1: f64,
    pub freq2: f64,
    pub noise_var: f64,
    pub length: usize,
    pub seed: u64,
}

impl SinusoidSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("amp_a", self.amp_a),
            ("amp_b", self.amp_b),
            ("freq1", self.freq1),
            ("freq2", self.freq2),
            ("noise_var", self.noise_var),
        ] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite")));
            }
        }
        check_frequency(self.freq1)?;
        check_frequency(self.freq2)?;
        check_variance(self.noise_var)?;
        if self.length == 0 {
            return Err(invalid("length must be at least 1"));
        }
        Ok(())
    }
}

/// Parameters of `R(k) = A cos(2π f1 k) + B cos(2π f2 k) + δ(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactAcfSpec {
    pub amp_a: f64,
    pub amp_b: f64,
    pub freq1: f64,
    pub freq2: f64,
    pub max_lag: usize,
}

pub(crate) fn check_frequency(freq: f64) -> Result<()> {
    if !(0.0..0.5).contains(&freq) {
        return Err(invalid(format!(
            "frequency {freq} outside [0, 0.5) cycles/sample"
        )));
    }
    Ok(())
}

fn check_variance(var: f64) -> Result<()> {
    if !var.is_finite() || var < 0.0 {
        return Err(invalid(format!(
            "noise variance {var} must be finite and >= 0"
        )));
    }
    Ok(())
}

pub fn synth_sinusoids(spec: &SinusoidSpec) -> Result<Signal> {
    spec.validate()?;
    let noise = gaussian_noise(spec.noise_var, spec.length, spec.seed)?;
    let samples = noise
        .samples()
        .iter()
        .enumerate()
        .map(|(n, w)| {
            let n = n as f64;
            spec.amp_a * (TAU * spec.freq1 * n).cos()
                + spec.amp_b * (TAU * spec.freq2 * n).cos()
                + w
        })
        .collect();
    Signal::new(samples)
}

/// I.i.d. zero-mean Gaussian samples of variance `var`, deterministic per seed.
pub fn gaussian_noise(var: f64, length: usize, seed: u64) -> Result<Signal> {
    check_variance(var)?;
    if length == 0 {
        return Err(invalid("length must be at least 1"));
    }
    let sd = var.sqrt();
    Signal::new(
        standard_normals(seed, length)
            .into_iter()
            .map(|z| sd * z)
            .collect(),
    )
}

pub fn exact_acf(spec: &ExactAcfSpec) -> Result<AcfSequence> {
    for v in [spec.amp_a, spec.amp_b, spec.freq1, spec.freq2] {
        if !v.is_finite() {
            return Err(invalid("exact ACF parameters must be finite"));
        }
    }
    let lags = (0..=spec.max_lag)
        .map(|k| {
            let kf = k as f64;
            let delta = if k == 0 { 1.0 } else { 0.0 };
            spec.amp_a * (TAU * spec.freq1 * kf).cos()
                + spec.amp_b * (TAU * spec.freq2 * kf).cos()
                + delta
        })
        .collect();
    AcfSequence::new(lags, AcfSource::Exact)
}

/// Adds `amp · cos(2π freq n)` to the carrier.
pub fn embed_sinusoid(carrier: &Signal, freq: f64, amp: f64) -> Result<Signal> {
    check_frequency(freq)?;
    if !amp.is_finite() {
        return Err(invalid("amplitude must be finite"));
    }
    let samples = carrier
        .samples()
        .iter()
        .enumerate()
        .map(|(n, c)| c + amp * (TAU * freq * n as f64).cos())
        .collect();
    Signal::new(samples)
}
