//! Capon minimum-variance spectrum and autoregressive estimators
//! (Yule-Walker and forward-backward modified covariance).

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::autocorr::{toeplitz_from_acf, AcfSequence};
use crate::error::{invalid, Error, Result};
use crate::linalg::{hermitian_quadratic_form, levinson_solve, Cholesky, SymmetricMatrix};
use crate::signal_model::Signal;
use crate::spectrum::{FrequencyGrid, Method, SpectrumEstimate};

/// Ceiling applied to AR spectrum values whose denominator underflows.
pub const AR_SPECTRUM_CEILING: f64 = 1e30;

/// Noise powers below `-NOISE_POWER_TOL · scale` are reported as errors.
pub const NOISE_POWER_TOL: f64 = 1e-9;

/// Modified-covariance systems whose smallest Cholesky pivot falls below
/// this fraction of the largest diagonal are treated as rank deficient.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArMethod {
    YuleWalker,
    ModifiedCovariance,
}

impl From<ArMethod> for Method {
    fn from(m: ArMethod) -> Self {
        match m {
            ArMethod::YuleWalker => Method::YuleWalker,
            ArMethod::ModifiedCovariance => Method::ModifiedCovariance,
        }
    }
}

/// AR(p) model `x(n) = -Σ a(k) x(n-k) + e(n)` with `E[e²] = noise_power`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArModel {
    pub coeffs: Vec<f64>,
    pub noise_power: f64,
    pub method: ArMethod,
}

impl ArModel {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
}

fn check_noise_power(power: f64, scale: f64) -> Result<()> {
    if !power.is_finite() || power < -NOISE_POWER_TOL * scale {
        return Err(Error::NegativeNoisePower { power });
    }
    Ok(())
}

/// `1 / (eᴴ R⁻¹ e)` with `R` the `dim × dim` Toeplitz matrix of `acf`.
pub fn capon_spectrum(
    acf: &AcfSequence,
    dim: usize,
    grid: &FrequencyGrid,
) -> Result<SpectrumEstimate> {
    let r = toeplitz_from_acf(acf, dim)?;
    let factor = Cholesky::factor(&r.to_symmetric())?;
    let values = grid
        .points()
        .iter()
        .map(|&f| hermitian_quadratic_form(&factor, f).map(|q| 1.0 / q))
        .collect::<Result<Vec<_>>>()?;
    SpectrumEstimate::new(Method::Capon, grid.clone(), values)
}

/// AR fit from autocorrelation lags via Levinson-Durbin.
pub fn yule_walker_fit(acf: &AcfSequence, order: usize) -> Result<ArModel> {
    let sol = levinson_solve(acf, order)?;
    check_noise_power(sol.noise_power, acf.lags()[0])?;
    Ok(ArModel {
        coeffs: sol.coeffs,
        noise_power: sol.noise_power,
        method: ArMethod::YuleWalker,
    })
}

/// Forward-backward covariance estimates `Ĉ(j, k)`, `0 <= j, k <= p`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimates {
    order: usize,
    matrix: SymmetricMatrix,
}

impl CovarianceEstimates {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.matrix.get(j, k)
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }
}

/// `Ĉ(j,k) = 1/(2(N-p)) Σ_{n=p}^{N-1} [x(n-j) x(n-k) + x(n-p+j) x(n-p+k)]`.
pub fn covariance_estimates(x: &Signal, order: usize) -> Result<CovarianceEstimates> {
    let s = x.samples();
    let n = s.len();
    if n < 2 * order || n <= order {
        return Err(Error::SignalTooShort {
            length: n,
            reason: format!(
                "order {order} needs at least {} samples",
                (2 * order).max(order + 1)
            ),
        });
    }
    let p = order;
    let norm = 1.0 / (2.0 * (n - p) as f64);
    let matrix = SymmetricMatrix::from_fn(p + 1, |j, k| {
        let sum: f64 = (p..n)
            .map(|t| s[t - j] * s[t - k] + s[t - p + j] * s[t - p + k])
            .sum();
        sum * norm
    });
    Ok(CovarianceEstimates { order: p, matrix })
}

/// Modified covariance AR fit: minimizes the summed forward and backward
/// prediction-error power over the data.
pub fn modcov_fit(x: &Signal, order: usize) -> Result<ArModel> {
    if order == 0 {
        return Err(invalid("order must be at least 1"));
    }
    let c = covariance_estimates(x, order)?;
    let normal = SymmetricMatrix::from_fn(order, |j, k| c.get(j + 1, k + 1));
    let rhs: Vec<f64> = (1..=order).map(|j| -c.get(j, 0)).collect();

    let factor = Cholesky::factor(&normal).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } => Error::RankDeficient { order },
        other => other,
    })?;
    if factor.relative_min_pivot() < RANK_TOL {
        return Err(Error::RankDeficient { order });
    }
    let coeffs = factor.solve(&rhs);

    let noise_power = c.get(0, 0)
        + coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * c.get(0, i + 1))
            .sum::<f64>();
    check_noise_power(noise_power, c.get(0, 0))?;
    Ok(ArModel {
        coeffs,
        noise_power,
        method: ArMethod::ModifiedCovariance,
    })
}

/// `ρ̂ / |1 + Σ a(k) e^{-j2πfk}|²`. A noise power that is negative only by
/// rounding is treated as zero; values are capped at
/// [`AR_SPECTRUM_CEILING`].
pub fn ar_spectrum(model: &ArModel, grid: &FrequencyGrid) -> SpectrumEstimate {
    let rho = model.noise_power.max(0.0);
    let values = grid
        .points()
        .iter()
        .map(|&f| {
            let (mut re, mut im) = (1.0, 0.0);
            for (k, a) in model.coeffs.iter().enumerate() {
                let (s, c) = (TAU * f * (k + 1) as f64).sin_cos();
                re += a * c;
                im -= a * s;
            }
            let v = rho / (re * re + im * im);
            if v.is_nan() || v > AR_SPECTRUM_CEILING {
                AR_SPECTRUM_CEILING
            } else {
                v
            }
        })
        .collect();
    SpectrumEstimate::new(model.method.into(), grid.clone(), values)
        .expect("AR spectrum is finite after capping")
}
