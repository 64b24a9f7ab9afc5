//! Uniform entry points over the five estimators.

use crate::autocorr::{biased_acf, AcfSequence};
use crate::error::{invalid, Error, Result};
use crate::nonparametric::{blackman_tukey, blackman_tukey_from_acf, periodogram, LagWindow};
use crate::parametric::{ar_spectrum, capon_spectrum, modcov_fit, yule_walker_fit};
use crate::signal_model::Signal;
use crate::spectrum::{FrequencyGrid, Method, SpectrumEstimate};

/// Order used when none is given: 20 for Yule-Walker, 10 otherwise.
pub fn default_order(method: Method) -> usize {
    match method {
        Method::YuleWalker => 20,
        _ => 10,
    }
}

/// Runs `method` on raw data. `order` is the lag-window half-width for
/// Blackman-Tukey, the filter length for Capon and the AR order for the
/// two autoregressive methods; the periodogram ignores it.
pub fn estimate(
    x: &Signal,
    method: Method,
    order: usize,
    grid: &FrequencyGrid,
) -> Result<SpectrumEstimate> {
    if method != Method::Periodogram && order == 0 {
        return Err(invalid("order must be at least 1"));
    }
    match method {
        Method::Periodogram => Ok(periodogram(x, grid)),
        Method::BlackmanTukey => blackman_tukey(x, LagWindow::bartlett(order), grid),
        Method::Capon => capon_spectrum(&biased_acf(x, order - 1)?, order, grid),
        Method::YuleWalker => Ok(ar_spectrum(
            &yule_walker_fit(&biased_acf(x, order)?, order)?,
            grid,
        )),
        Method::ModifiedCovariance => Ok(ar_spectrum(&modcov_fit(x, order)?, grid)),
    }
}

/// Runs an autocorrelation-domain method directly on `acf`.
pub fn estimate_from_acf(
    acf: &AcfSequence,
    method: Method,
    order: usize,
    grid: &FrequencyGrid,
) -> Result<SpectrumEstimate> {
    if order == 0 {
        return Err(invalid("order must be at least 1"));
    }
    match method {
        Method::BlackmanTukey => blackman_tukey_from_acf(acf, LagWindow::bartlett(order), grid),
        Method::Capon => capon_spectrum(acf, order, grid),
        Method::YuleWalker => Ok(ar_spectrum(&yule_walker_fit(acf, order)?, grid)),
        Method::Periodogram | Method::ModifiedCovariance => Err(Error::RequiresSignal {
            method: method.name(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal_model::gaussian_noise;

    #[test]
    fn dispatch_tags_method() {
        let x = gaussian_noise(1.0, 200, 1).unwrap();
        let g = FrequencyGrid::uniform(64).unwrap();
        for m in Method::ALL {
            assert_eq!(estimate(&x, m, default_order(m), &g).unwrap().method(), m);
        }
    }

    #[test]
    fn acf_path_refuses_data_methods() {
        let x = gaussian_noise(1.0, 50, 1).unwrap();
        let acf = biased_acf(&x, 10).unwrap();
        let g = FrequencyGrid::uniform(16).unwrap();
        assert!(matches!(
            estimate_from_acf(&acf, Method::ModifiedCovariance, 4, &g),
            Err(Error::RequiresSignal { .. })
        ));
        assert!(estimate_from_acf(&acf, Method::Capon, 12, &g).is_err());
        assert!(estimate_from_acf(&acf, Method::Capon, 11, &g).is_ok());
    }

    #[test]
    fn zero_order_rejected() {
        let x = gaussian_noise(1.0, 50, 1).unwrap();
        let g = FrequencyGrid::uniform(16).unwrap();
        assert!(estimate(&x, Method::Capon, 0, &g).is_err());
        assert!(estimate(&x, Method::Periodogram, 0, &g).is_ok());
    }
}
