//! Biased autocorrelation estimation and Toeplitz autocorrelation matrices.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::signal_model::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcfSource {
    Estimated,
    Exact,
}

/// Autocorrelation lags `r(0..=max_lag)` of a real process. Negative lags
/// follow from evenness, `r(-k) = r(k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfSequence {
    lags: Vec<f64>,
    source: AcfSource,
}

impl AcfSequence {
    pub fn new(lags: Vec<f64>, source: AcfSource) -> Result<Self> {
        if lags.is_empty() {
            return Err(invalid("autocorrelation needs at least lag 0"));
        }
        if let Some(index) = lags.iter().position(|r| !r.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        if lags[0] < 0.0 {
            return Err(invalid(format!("r(0) = {} must be non-negative", lags[0])));
        }
        Ok(Self { lags, source })
    }

    pub fn lags(&self) -> &[f64] {
        &self.lags
    }

    pub fn max_lag(&self) -> usize {
        self.lags.len() - 1
    }

    pub fn source(&self) -> AcfSource {
        self.source
    }

    /// `r(k)` for any `|k| <= max_lag`.
    pub fn at(&self, k: i64) -> f64 {
        self.lags[k.unsigned_abs() as usize]
    }

    pub fn scaled(&self, gain: f64) -> Result<AcfSequence> {
        AcfSequence::new(self.lags.iter().map(|r| r * gain).collect(), self.source)
    }

    /// Fails unless lags `0..=max_lag` are present.
    pub(crate) fn require_lags(&self, max_lag: usize) -> Result<()> {
        if max_lag > self.max_lag() {
            return Err(Error::InsufficientLags {
                required: max_lag + 1,
                available: self.lags.len(),
            });
        }
        Ok(())
    }
}

/// `r(k) = (1/N) Σ_{n=0}^{N-1-k} x(n) x(n+k)` for `k = 0..=max_lag`.
///
/// The 1/N normalization keeps the resulting Toeplitz matrix positive
/// semidefinite.
pub fn biased_acf(x: &Signal, max_lag: usize) -> Result<AcfSequence> {
    let s = x.samples();
    let n = s.len();
    if max_lag >= n {
        return Err(invalid(format!(
            "max_lag {max_lag} must be below the signal length {n}"
        )));
    }
    let lags = (0..=max_lag)
        .map(|k| {
            s[..n - k]
                .iter()
                .zip(&s[k..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64
        })
        .collect();
    AcfSequence::new(lags, AcfSource::Estimated)
}

/// Symmetric Toeplitz matrix with entry `(i, j) = r(|i - j|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix {
    first_row: Vec<f64>,
}

impl ToeplitzMatrix {
    pub fn dim(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.first_row[i.abs_diff(j)]
    }

    pub fn to_symmetric(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.dim(), |i, j| self.get(i, j))
    }
}

pub fn toeplitz_from_acf(acf: &AcfSequence, dim: usize) -> Result<ToeplitzMatrix> {
    if dim == 0 {
        return Err(invalid("Toeplitz dimension must be at least 1"));
    }
    acf.require_lags(dim - 1)?;
    Ok(ToeplitzMatrix {
        first_row: acf.lags()[..dim].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Cholesky;
    use crate::signal_model::{exact_acf, gaussian_noise, ExactAcfSpec};
    use proptest::prelude::*;

    fn sig(v: &[f64]) -> Signal {
        Signal::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constant_signal() {
        let acf = biased_acf(&sig(&[1.0; 4]), 1).unwrap();
        assert_eq!(acf.lags(), &[1.0, 0.75]);
        assert_eq!(acf.source(), AcfSource::Estimated);
    }

    #[test]
    fn zero_signal() {
        let acf = biased_acf(&sig(&[0.0; 6]), 3).unwrap();
        assert!(acf.lags().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn quarter_rate_cosine_matches_direct_sum() {
        let x: Vec<f64> = (0..8)
            .map(|n| (std::f64::consts::FRAC_PI_2 * n as f64).cos())
            .collect();
        // Direct summation over the 8 samples (1,0,-1,0,1,0,-1,0):
        // r(0) = 4/8, r(2) = 3·(-1)/8.
        let acf = biased_acf(&sig(&x), 2).unwrap();
        assert!((acf.lags()[0] - 0.5).abs() < 1e-15);
        assert!(acf.lags()[1].abs() < 1e-15);
        assert!((acf.lags()[2] + 0.375).abs() < 1e-15);
    }

    #[test]
    fn rejects_lag_beyond_length() {
        assert!(biased_acf(&sig(&[1.0, 2.0, 3.0]), 3).is_err());
        assert!(biased_acf(&sig(&[1.0, 2.0, 3.0]), 2).is_ok());
    }

    #[test]
    fn white_acf_gives_identity() {
        let acf = AcfSequence::new(vec![1.0, 0.0, 0.0], AcfSource::Exact).unwrap();
        let t = toeplitz_from_acf(&acf, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn two_by_two() {
        let acf = AcfSequence::new(vec![2.0, 1.0], AcfSource::Exact).unwrap();
        let m = toeplitz_from_acf(&acf, 2).unwrap().to_symmetric();
        assert_eq!(
            (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)),
            (2.0, 1.0, 1.0, 2.0)
        );
    }

    #[test]
    fn case_b1_diagonal() {
        let acf = exact_acf(&ExactAcfSpec {
            amp_a: 5.0,
            amp_b: 5.0,
            freq1: 0.2,
            freq2: 0.3,
            max_lag: 5,
        })
        .unwrap();
        let t = toeplitz_from_acf(&acf, 6).unwrap();
        assert!((0..6).all(|i| t.get(i, i) == 11.0));
        assert!(toeplitz_from_acf(&acf, 7).is_err());
        assert!(toeplitz_from_acf(&acf, 0).is_err());
    }

    #[test]
    fn negative_lags_mirror() {
        let acf = biased_acf(&gaussian_noise(1.0, 32, 4).unwrap(), 5).unwrap();
        for k in 0..=5i64 {
            assert_eq!(acf.at(-k), acf.at(k));
        }
    }

    proptest! {
        #[test]
        fn biased_acf_bounded_and_psd(seed in any::<u64>(), n in 8usize..128, m in 1usize..8) {
            let x = gaussian_noise(1.0, n, seed).unwrap();
            let acf = biased_acf(&x, m).unwrap();
            let r0 = acf.lags()[0];
            prop_assert!(acf.lags().iter().all(|r| r.abs() <= r0 * (1.0 + 1e-12)));
            // A Cholesky factorization of the slightly loaded matrix exists
            // exactly when the minimum eigenvalue exceeds -1e-9 r(0).
            let t = toeplitz_from_acf(&acf, m + 1).unwrap().to_symmetric();
            let loaded = crate::linalg::SymmetricMatrix::from_fn(m + 1, |i, j| {
                t.get(i, j) + if i == j { 1e-9 * r0 } else { 0.0 }
            });
            prop_assert!(Cholesky::factor(&loaded).is_ok());
        }

        #[test]
        fn scaling_is_quadratic(seed in any::<u64>(), c in -50.0f64..50.0) {
            let x = gaussian_noise(1.0, 64, seed).unwrap();
            let a = biased_acf(&x, 6).unwrap();
            let b = biased_acf(&x.scaled(c), 6).unwrap();
            // Lags near zero suffer cancellation, so the error is measured
            // against the lag-0 scale.
            let scale = c * c * a.lags()[0];
            for (ra, rb) in a.lags().iter().zip(b.lags()) {
                prop_assert!((rb - c * c * ra).abs() <= 1e-12 * scale);
            }
        }
    }
}
