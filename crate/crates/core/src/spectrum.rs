//! Frequency grids, estimator tags and sampled spectrum estimates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Grid size used when the caller does not choose one.
pub const DEFAULT_GRID_SIZE: usize = 512;

/// Strictly increasing frequencies in cycles/sample, all within `[0, 0.5]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("frequency grid must not be empty"));
        }
        if points.iter().any(|f| !(0.0..=0.5).contains(f)) {
            return Err(invalid("grid frequencies must lie in [0, 0.5]"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("grid frequencies must be strictly increasing"));
        }
        Ok(Self { points })
    }

    /// `count` equally spaced points `i · 0.5 / count` on `[0, 0.5)`.
    pub fn uniform(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(invalid("grid size must be at least 1"));
        }
        Self::new((0..count).map(|i| i as f64 * 0.5 / count as f64).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Spacing between the first two points (0.5 for a single-point grid).
    pub fn bin_width(&self) -> f64 {
        match self.points.as_slice() {
            [a, b, ..] => b - a,
            _ => 0.5,
        }
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_SIZE).expect("default grid is valid")
    }
}

impl TryFrom<Vec<f64>> for FrequencyGrid {
    type Error = Error;

    fn try_from(points: Vec<f64>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<FrequencyGrid> for Vec<f64> {
    fn from(g: FrequencyGrid) -> Self {
        g.points
    }
}

/// The five estimators, in canonical output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Periodogram,
    BlackmanTukey,
    Capon,
    YuleWalker,
    ModifiedCovariance,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Periodogram,
        Method::BlackmanTukey,
        Method::Capon,
        Method::YuleWalker,
        Method::ModifiedCovariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Periodogram => "periodogram",
            Method::BlackmanTukey => "blackman_tukey",
            Method::Capon => "capon",
            Method::YuleWalker => "yule_walker",
            Method::ModifiedCovariance => "modified_covariance",
        }
    }

    /// Abbreviation accepted on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            Method::Periodogram => "periodogram",
            Method::BlackmanTukey => "bt",
            Method::Capon => "capon",
            Method::YuleWalker => "yw",
            Method::ModifiedCovariance => "modcov",
        }
    }

    /// Whether an autocorrelation sequence alone is enough input.
    pub fn works_from_acf(self) -> bool {
        matches!(
            self,
            Method::BlackmanTukey | Method::Capon | Method::YuleWalker
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s || m.short_name() == s)
            .ok_or_else(|| invalid(format!("unknown method `{s}`")))
    }
}

/// A power-spectrum estimate sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    method: Method,
    grid: FrequencyGrid,
    values: Vec<f64>,
}

impl SpectrumEstimate {
    pub fn new(method: Method, grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid("spectrum and grid lengths differ"));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            method,
            grid,
            values,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Frequency of the largest value (first one on ties).
    pub fn argmax(&self) -> f64 {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        self.grid.points()[best]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_layout() {
        let g = FrequencyGrid::uniform(512).unwrap();
        assert_eq!(g.len(), 512);
        assert_eq!(g.points()[0], 0.0);
        assert!((g.bin_width() - 0.5 / 512.0).abs() < 1e-18);
        assert!(*g.points().last().unwrap() < 0.5);
    }

    #[test]
    fn grid_validation() {
        assert!(FrequencyGrid::uniform(0).is_err());
        assert!(FrequencyGrid::new(vec![0.1, 0.1]).is_err());
        assert!(FrequencyGrid::new(vec![0.2, 0.1]).is_err());
        assert!(FrequencyGrid::new(vec![-0.1, 0.1]).is_err());
        assert!(FrequencyGrid::new(vec![0.0, 0.5]).is_ok());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(m.short_name().parse::<Method>().unwrap(), m);
        }
        assert!("burg".parse::<Method>().is_err());
    }
}
