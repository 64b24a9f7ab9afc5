//! Periodogram and Blackman-Tukey estimators.
//!
//! Both are evaluated by direct cosine summation over the even-extended
//! autocorrelation: `P(f) = w(0) r(0) + 2 Σ_{k≥1} w(k) r(k) cos(2π f k)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::autocorr::{biased_acf, AcfSequence};
use crate::error::{invalid, Result};
use crate::signal_model::Signal;
use crate::spectrum::{FrequencyGrid, Method, SpectrumEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Bartlett,
    Rectangular,
}

/// Lag window of half-width `M`: weights for `|k| <= M`, zero beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagWindow {
    pub kind: WindowKind,
    pub half_width: usize,
}

impl LagWindow {
    pub fn bartlett(half_width: usize) -> Self {
        Self {
            kind: WindowKind::Bartlett,
            half_width,
        }
    }

    pub fn rectangular(half_width: usize) -> Self {
        Self {
            kind: WindowKind::Rectangular,
            half_width,
        }
    }

    pub fn weight(&self, k: i64) -> f64 {
        match self.kind {
            WindowKind::Bartlett => bartlett_weight(k, self.half_width),
            WindowKind::Rectangular => {
                if k.unsigned_abs() as usize <= self.half_width {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Triangular weight `1 - |k|/m` for `|k| <= m`, else 0. `m = 0` is treated
/// as the degenerate window that keeps lag 0 only.
pub fn bartlett_weight(k: i64, m: usize) -> f64 {
    let k = k.unsigned_abs() as usize;
    if m == 0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if k > m {
        0.0
    } else {
        1.0 - k as f64 / m as f64
    }
}

/// `c[0] + 2 Σ_{k≥1} c[k] cos(2π f k)` at every grid point.
fn even_cosine_series(coeffs: &[f64], grid: &FrequencyGrid) -> Vec<f64> {
    grid.points()
        .iter()
        .map(|&f| {
            let tail: f64 = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * (TAU * f * k as f64).cos())
                .sum();
            coeffs[0] + 2.0 * tail
        })
        .collect()
}

/// Fourier transform of the biased autocorrelation over all `N - 1` lags.
/// Equivalent to `|Σ x(n) e^{-j2πfn}|² / N`.
pub fn periodogram(x: &Signal, grid: &FrequencyGrid) -> SpectrumEstimate {
    let acf = biased_acf(x, x.len() - 1).expect("lag N-1 is always available");
    let values = even_cosine_series(acf.lags(), grid);
    SpectrumEstimate::new(Method::Periodogram, grid.clone(), values)
        .expect("periodogram of a finite signal is finite")
}

/// Lag-windowed transform of the biased autocorrelation of `x`.
pub fn blackman_tukey(
    x: &Signal,
    window: LagWindow,
    grid: &FrequencyGrid,
) -> Result<SpectrumEstimate> {
    if window.half_width >= x.len() {
        return Err(invalid(format!(
            "window half-width {} must be below the signal length {}",
            window.half_width,
            x.len()
        )));
    }
    let acf = biased_acf(x, window.half_width)?;
    blackman_tukey_from_acf(&acf, window, grid)
}

/// Blackman-Tukey on a given autocorrelation sequence (estimated or exact).
pub fn blackman_tukey_from_acf(
    acf: &AcfSequence,
    window: LagWindow,
    grid: &FrequencyGrid,
) -> Result<SpectrumEstimate> {
    acf.require_lags(window.half_width)?;
    let coeffs: Vec<f64> = acf.lags()[..=window.half_width]
        .iter()
        .enumerate()
        .map(|(k, r)| window.weight(k as i64) * r)
        .collect();
    SpectrumEstimate::new(
        Method::BlackmanTukey,
        grid.clone(),
        even_cosine_series(&coeffs, grid),
    )
}
