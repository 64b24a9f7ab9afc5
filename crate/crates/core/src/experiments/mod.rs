//! Reproducible experiment cases and Monte-Carlo detection rates.
//!
//! | case | input                 | A | B   | f1  | f2   | order |
//! |------|-----------------------|---|-----|-----|------|-------|
//! | a1   | N=128, σ²=1e-3        | 1 | 1   | 0.2 | 0.25 | 5     |
//! | a2   | N=128, σ²=1e-3        | 1 | 1   | 0.2 | 0.22 | 10    |
//! | a3   | N=128, σ²=1e-3        | 1 | 0.1 | 0.2 | 0.25 | 10    |
//! | b1   | exact autocorrelation | 5 | 5   | 0.2 | 0.3  | 5     |
//! | b2   | exact autocorrelation | 5 | 5   | 0.2 | 0.3  | 10    |
//! | c1   | 1000-sample carrier   | 1 | 0   | 0.2 | -    | 10    |
//! | c2   | 1000-sample carrier   | 1 | 0   | 0.2 | -    | 20    |

mod emit;

pub use emit::{emit_results, Emit, Format};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audio_steg::{
    normalize_rms, synthetic_carrier, DEFAULT_CARRIER_LENGTH, DEFAULT_PROMINENCE,
};
use crate::autocorr::AcfSequence;
use crate::error::{invalid, Error, Result};
use crate::estimate::{estimate, estimate_from_acf};
use crate::peaks::{find_peaks, Peak};
use crate::signal_model::{
    embed_sinusoid, exact_acf, synth_sinusoids, ExactAcfSpec, Signal, SinusoidSpec,
};
use crate::spectrum::{FrequencyGrid, Method, DEFAULT_GRID_SIZE};

/// A tone counts as found when a reported peak lies this close to it.
pub const DETECTION_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    A1,
    A2,
    A3,
    B1,
    B2,
    C1,
    C2,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::A1,
        CaseId::A2,
        CaseId::A3,
        CaseId::B1,
        CaseId::B2,
        CaseId::C1,
        CaseId::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::A1 => "a1",
            CaseId::A2 => "a2",
            CaseId::A3 => "a3",
            CaseId::B1 => "b1",
            CaseId::B2 => "b2",
            CaseId::C1 => "c1",
            CaseId::C2 => "c2",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid(format!("unknown case `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Carrier {
    /// Seeded colored noise, regenerated for every trial seed.
    Synthetic,
    /// User audio; identical in every trial.
    Recorded(Signal),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CaseInput {
    /// Sinusoids in white Gaussian noise.
    Awgn { noise_var: f64, length: usize },
    /// Only the exact autocorrelation lags `0..=order` are available.
    ExactAcf,
    /// Tones embedded in a unit-RMS carrier truncated to `length`.
    Carrier { carrier: Carrier, length: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentCase {
    pub id: CaseId,
    pub amp_a: f64,
    pub amp_b: f64,
    pub freq1: f64,
    pub freq2: f64,
    /// Shared by every method: window half-width, Capon filter length or AR order.
    pub order: usize,
    pub input: CaseInput,
    /// Estimators to run; ones that cannot use the input are skipped.
    pub methods: Vec<Method>,
    /// `run_case` uses this seed; Monte-Carlo trial `t` uses `seed_base + t`.
    pub seed_base: u64,
    pub grid_size: usize,
    pub prominence: f64,
    pub tolerance: f64,
}

impl ExperimentCase {
    /// The standard parameters for `id`, with seed 0 and a synthetic carrier.
    pub fn preset(id: CaseId) -> Self {
        let awgn = CaseInput::Awgn {
            noise_var: 1e-3,
            length: 128,
        };
        let carrier = CaseInput::Carrier {
            carrier: Carrier::Synthetic,
            length: DEFAULT_CARRIER_LENGTH,
        };
        let (amp_a, amp_b, freq1, freq2, order, input) = match id {
            CaseId::A1 => (1.0, 1.0, 0.2, 0.25, 5, awgn),
            CaseId::A2 => (1.0, 1.0, 0.2, 0.22, 10, awgn),
            CaseId::A3 => (1.0, 0.1, 0.2, 0.25, 10, awgn),
            CaseId::B1 => (5.0, 5.0, 0.2, 0.3, 5, CaseInput::ExactAcf),
            CaseId::B2 => (5.0, 5.0, 0.2, 0.3, 10, CaseInput::ExactAcf),
            CaseId::C1 => (1.0, 0.0, 0.2, 0.0, 10, carrier),
            CaseId::C2 => (1.0, 0.0, 0.2, 0.0, 20, carrier),
        };
        Self {
            id,
            amp_a,
            amp_b,
            freq1,
            freq2,
            order,
            input,
            methods: Method::ALL.to_vec(),
            seed_base: 0,
            grid_size: DEFAULT_GRID_SIZE,
            prominence: DEFAULT_PROMINENCE,
            tolerance: DETECTION_TOLERANCE,
        }
    }

    /// Frequencies of the tones with non-zero amplitude.
    pub fn true_frequencies(&self) -> Vec<f64> {
        [(self.amp_a, self.freq1), (self.amp_b, self.freq2)]
            .into_iter()
            .filter(|(a, _)| *a != 0.0)
            .map(|(_, f)| f)
            .collect()
    }

    /// Methods that will actually run on this case's input.
    pub fn applicable_methods(&self) -> Vec<Method> {
        let mut m: Vec<Method> = self
            .methods
            .iter()
            .copied()
            .filter(|m| !matches!(self.input, CaseInput::ExactAcf) || m.works_from_acf())
            .collect();
        m.sort();
        m.dedup();
        m
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(invalid("order must be at least 1"));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(invalid("tolerance must be finite and non-negative"));
        }
        if !(self.prominence.is_finite() && self.prominence >= 0.0) {
            return Err(invalid("prominence must be finite and non-negative"));
        }
        FrequencyGrid::uniform(self.grid_size)?;
        Ok(())
    }

    /// The observed data for one trial. Not defined for exact-ACF cases.
    pub fn signal(&self, seed: u64) -> Result<Signal> {
        match &self.input {
            CaseInput::Awgn { noise_var, length } => synth_sinusoids(&SinusoidSpec {
                amp_a: self.amp_a,
                amp_b: self.amp_b,
                freq1: self.freq1,
                freq2: self.freq2,
                noise_var: *noise_var,
                length: *length,
                seed,
            }),
            CaseInput::Carrier { carrier, length } => {
                let base = match carrier {
                    Carrier::Synthetic => synthetic_carrier(*length, seed)?,
                    Carrier::Recorded(audio) => {
                        if audio.len() < *length {
                            return Err(Error::CarrierTooShort {
                                available: audio.len(),
                                requested: *length,
                            });
                        }
                        Signal::new(audio.samples()[..*length].to_vec())?
                    }
                };
                let x = embed_sinusoid(&normalize_rms(&base), self.freq1, self.amp_a)?;
                embed_sinusoid(&x, self.freq2, self.amp_b)
            }
            CaseInput::ExactAcf => Err(invalid("exact-ACF cases have no sample data")),
        }
    }

    pub fn exact_acf(&self) -> Result<AcfSequence> {
        exact_acf(&ExactAcfSpec {
            amp_a: self.amp_a,
            amp_b: self.amp_b,
            freq1: self.freq1,
            freq2: self.freq2,
            max_lag: self.order,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToneVerdict {
    pub frequency: f64,
    pub detected: bool,
    /// The reported peak nearest the tone, when within tolerance.
    pub peak: Option<Peak>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub order: usize,
    /// Spectrum on the case grid; absent when the estimator failed.
    pub values: Option<Vec<f64>>,
    pub peaks: Vec<Peak>,
    pub verdicts: Vec<ToneVerdict>,
    pub error: Option<String>,
}

impl MethodResult {
    /// True when there is at least one tone and every tone was found.
    pub fn detected_all(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.detected)
    }

    /// Reported peaks inside `[lo, hi]`.
    pub fn peaks_in(&self, lo: f64, hi: f64) -> impl Iterator<Item = &Peak> {
        self.peaks
            .iter()
            .filter(move |p| (lo..=hi).contains(&p.frequency))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: CaseId,
    pub seed: u64,
    pub order: usize,
    pub true_frequencies: Vec<f64>,
    pub grid: FrequencyGrid,
    pub methods: Vec<MethodResult>,
}

impl CaseResult {
    pub fn method(&self, method: Method) -> Option<&MethodResult> {
        self.methods.iter().find(|m| m.method == method)
    }
}

fn judge(
    method: Method,
    order: usize,
    outcome: Result<crate::spectrum::SpectrumEstimate>,
    case: &ExperimentCase,
    truths: &[f64],
    grid: &FrequencyGrid,
) -> MethodResult {
    match outcome {
        Ok(spectrum) => {
            let peaks = find_peaks(grid.points(), spectrum.values(), case.prominence);
            let verdicts = truths
                .iter()
                .map(|&f| {
                    let peak = peaks
                        .iter()
                        .filter(|p| (p.frequency - f).abs() <= case.tolerance)
                        .min_by(|a, b| (a.frequency - f).abs().total_cmp(&(b.frequency - f).abs()))
                        .copied();
                    ToneVerdict {
                        frequency: f,
                        detected: peak.is_some(),
                        peak,
                    }
                })
                .collect();
            MethodResult {
                method,
                order,
                values: Some(spectrum.values().to_vec()),
                peaks,
                verdicts,
                error: None,
            }
        }
        Err(e) => MethodResult {
            method,
            order,
            values: None,
            peaks: Vec::new(),
            verdicts: truths
                .iter()
                .map(|&f| ToneVerdict {
                    frequency: f,
                    detected: false,
                    peak: None,
                })
                .collect(),
            error: Some(e.to_string()),
        },
    }
}

/// One realization of `case` with an explicit seed. Estimator failures are
/// recorded per method; only invalid case parameters abort.
pub fn run_trial(case: &ExperimentCase, seed: u64) -> Result<CaseResult> {
    case.validate()?;
    let grid = FrequencyGrid::uniform(case.grid_size)?;
    let truths = case.true_frequencies();
    let order = case.order;
    let methods = case.applicable_methods();

    let results = match case.input {
        CaseInput::ExactAcf => {
            let acf = case.exact_acf()?;
            methods
                .iter()
                .map(|&m| {
                    judge(
                        m,
                        order,
                        estimate_from_acf(&acf, m, order, &grid),
                        case,
                        &truths,
                        &grid,
                    )
                })
                .collect()
        }
        _ => {
            let x = case.signal(seed)?;
            methods
                .iter()
                .map(|&m| {
                    judge(
                        m,
                        order,
                        estimate(&x, m, order, &grid),
                        case,
                        &truths,
                        &grid,
                    )
                })
                .collect()
        }
    };

    Ok(CaseResult {
        case: case.id,
        seed,
        order,
        true_frequencies: truths,
        grid,
        methods: results,
    })
}

/// [`run_trial`] at the case's base seed.
pub fn run_case(case: &ExperimentCase) -> Result<CaseResult> {
    run_trial(case, case.seed_base)
}

/// Trials `0..trials` with seeds `seed_base + t`, in trial order. Trials run
/// in parallel; the output does not depend on scheduling.
pub fn run_trials(case: &ExperimentCase, trials: usize) -> Result<Vec<CaseResult>> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(case, case.seed_base.wrapping_add(t)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionRate {
    pub method: Method,
    pub order: usize,
    /// Trials in which every true tone was found.
    pub detections: usize,
    /// Trials in which the estimator itself failed.
    pub failures: usize,
    pub trials: usize,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionTable {
    pub case: CaseId,
    pub trials: usize,
    pub seed_base: u64,
    pub rows: Vec<DetectionRate>,
}

impl DetectionTable {
    pub fn from_results(case: &ExperimentCase, results: &[CaseResult]) -> Self {
        let rows = case
            .applicable_methods()
            .into_iter()
            .map(|method| {
                let per: Vec<&MethodResult> =
                    results.iter().filter_map(|r| r.method(method)).collect();
                let detections = per.iter().filter(|m| m.detected_all()).count();
                let failures = per.iter().filter(|m| m.error.is_some()).count();
                DetectionRate {
                    method,
                    order: case.order,
                    detections,
                    failures,
                    trials: results.len(),
                    rate: detections as f64 / results.len() as f64,
                }
            })
            .collect();
        Self {
            case: case.id,
            trials: results.len(),
            seed_base: case.seed_base,
            rows,
        }
    }

    pub fn rate(&self, method: Method) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.method == method)
            .map(|r| r.rate)
    }
}

/// Per-method fraction of trials that found every true tone.
pub fn monte_carlo(case: &ExperimentCase, trials: usize) -> Result<DetectionTable> {
    Ok(DetectionTable::from_results(
        case,
        &run_trials(case, trials)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_table() {
        let expect = [
            (CaseId::A1, 1.0, 1.0, 0.2, 0.25, 5),
            (CaseId::A2, 1.0, 1.0, 0.2, 0.22, 10),
            (CaseId::A3, 1.0, 0.1, 0.2, 0.25, 10),
            (CaseId::B1, 5.0, 5.0, 0.2, 0.3, 5),
            (CaseId::B2, 5.0, 5.0, 0.2, 0.3, 10),
        ];
        for (id, a, b, f1, f2, m) in expect {
            let c = ExperimentCase::preset(id);
            assert_eq!(
                (c.amp_a, c.amp_b, c.freq1, c.freq2, c.order),
                (a, b, f1, f2, m)
            );
        }
        assert_eq!(ExperimentCase::preset(CaseId::C1).order, 10);
        assert_eq!(ExperimentCase::preset(CaseId::C2).order, 20);
        assert_eq!(
            ExperimentCase::preset(CaseId::C1).true_frequencies(),
            vec![0.2]
        );
    }

    #[test]
    fn case_a1_modcov_finds_both() {
        let r = run_case(&ExperimentCase::preset(CaseId::A1)).unwrap();
        assert_eq!(r.methods.len(), 5);
        assert!(r.method(Method::ModifiedCovariance).unwrap().detected_all());
    }

    #[test]
    fn case_b1_method_set_and_verdicts() {
        let r = run_case(&ExperimentCase::preset(CaseId::B1)).unwrap();
        let methods: Vec<Method> = r.methods.iter().map(|m| m.method).collect();
        assert_eq!(
            methods,
            vec![Method::BlackmanTukey, Method::Capon, Method::YuleWalker]
        );
        assert!(r.method(Method::YuleWalker).unwrap().detected_all());
        assert!(!r.method(Method::BlackmanTukey).unwrap().detected_all());
    }

    #[test]
    fn noise_only_has_empty_verdicts() {
        let mut c = ExperimentCase::preset(CaseId::A1);
        c.amp_a = 0.0;
        c.amp_b = 0.0;
        let r = run_case(&c).unwrap();
        for m in &r.methods {
            assert!(m.verdicts.is_empty());
            assert!(!m.detected_all());
        }
        assert!(monte_carlo(&c, 3)
            .unwrap()
            .rows
            .iter()
            .all(|r| r.rate == 0.0));
    }

    #[test]
    fn single_trial_table_matches_run_case() {
        let c = ExperimentCase::preset(CaseId::A2);
        let r = run_case(&c).unwrap();
        let t = monte_carlo(&c, 1).unwrap();
        for row in &t.rows {
            let m = r.method(row.method).unwrap();
            assert_eq!(row.rate, if m.detected_all() { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn noiseless_a1_modcov_is_rank_deficient_but_others_run() {
        let mut c = ExperimentCase::preset(CaseId::A1);
        c.input = CaseInput::Awgn {
            noise_var: 0.0,
            length: 128,
        };
        let r = run_case(&c).unwrap();
        let mc = r.method(Method::ModifiedCovariance).unwrap();
        assert!(mc.error.as_deref().unwrap().contains("rank deficient"));
        assert!(mc.values.is_none());
        assert!(r.method(Method::Periodogram).unwrap().error.is_none());
    }

    #[test]
    fn trials_are_schedule_independent() {
        let c = ExperimentCase::preset(CaseId::A1);
        let par = run_trials(&c, 8).unwrap();
        let seq: Vec<CaseResult> = (0..8).map(|t| run_trial(&c, t).unwrap()).collect();
        assert_eq!(par, seq);
    }

    #[test]
    fn recorded_carrier_must_be_long_enough() {
        let mut c = ExperimentCase::preset(CaseId::C1);
        c.input = CaseInput::Carrier {
            carrier: Carrier::Recorded(Signal::new(vec![0.1; 10]).unwrap()),
            length: 1000,
        };
        assert!(matches!(run_case(&c), Err(Error::CarrierTooShort { .. })));
    }

    #[test]
    fn invalid_cases_rejected() {
        let mut c = ExperimentCase::preset(CaseId::A1);
        c.order = 0;
        assert!(run_case(&c).is_err());
        let mut c = ExperimentCase::preset(CaseId::A1);
        c.grid_size = 0;
        assert!(run_case(&c).is_err());
        assert!(monte_carlo(&ExperimentCase::preset(CaseId::A1), 0).is_err());
    }

    #[test]
    fn case_ids_parse() {
        for id in CaseId::ALL {
            assert_eq!(id.name().parse::<CaseId>().unwrap(), id);
        }
        assert!("d1".parse::<CaseId>().is_err());
    }
}
