//! CSV and JSON renderings of results.
//!
//! Floats use Rust's shortest round-trip formatting, so identical inputs
//! give byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{CaseResult, DetectionTable};
use crate::audio_steg::PeakReport;
use crate::error::{invalid, Error};
use crate::spectrum::SpectrumEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(invalid(format!("unknown format `{other}`"))),
        }
    }
}

pub trait Emit: Serialize {
    fn to_csv(&self) -> String;

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result types serialize");
        s.push('\n');
        s
    }
}

pub fn emit_results<T: Emit + ?Sized>(result: &T, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => result.to_csv().into_bytes(),
        Format::Json => result.to_json().into_bytes(),
    }
}

/// One row per grid frequency, one column per method that ran. A failed
/// method leaves its cells empty.
impl Emit for CaseResult {
    fn to_csv(&self) -> String {
        let mut out = String::from("freq");
        for m in &self.methods {
            out.push(',');
            out.push_str(m.method.name());
        }
        out.push('\n');
        for (i, f) in self.grid.points().iter().enumerate() {
            write!(out, "{f}").unwrap();
            for m in &self.methods {
                out.push(',');
                if let Some(v) = &m.values {
                    write!(out, "{}", v[i]).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

impl Emit for DetectionTable {
    fn to_csv(&self) -> String {
        let mut out = String::from("method,order,detections,failures,trials,rate\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.method.name(),
                r.order,
                r.detections,
                r.failures,
                r.trials,
                r.rate
            )
            .unwrap();
        }
        out
    }
}

impl Emit for SpectrumEstimate {
    fn to_csv(&self) -> String {
        let mut out = format!("freq,{}\n", self.method().name());
        for (f, v) in self.grid().points().iter().zip(self.values()) {
            writeln!(out, "{f},{v}").unwrap();
        }
        out
    }
}

impl Emit for PeakReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("frequency,power,prominence\n");
        for p in &self.peaks {
            writeln!(out, "{},{},{}", p.frequency, p.power, p.prominence).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_case, CaseId, ExperimentCase};
    use crate::spectrum::Method;

    #[test]
    fn case_a1_header() {
        let r = run_case(&ExperimentCase::preset(CaseId::A1)).unwrap();
        let csv = r.to_csv();
        assert_eq!(
            csv.lines().next().unwrap(),
            "freq,periodogram,blackman_tukey,capon,yule_walker,modified_covariance"
        );
        assert_eq!(csv.lines().count(), 513);
    }

    #[test]
    fn json_round_trips() {
        let r = run_case(&ExperimentCase::preset(CaseId::B1)).unwrap();
        let json = r.to_json();
        let back: CaseResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["case"], "b1");
        assert_eq!(v["methods"][0]["method"], "blackman_tukey");
    }

    #[test]
    fn empty_peaks_stay_present() {
        let report = PeakReport {
            method: Method::Capon,
            order_used: 4,
            peaks: vec![],
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["peaks"], serde_json::json!([]));
        assert_eq!(report.to_csv(), "frequency,power,prominence\n");
    }

    #[test]
    fn emission_is_deterministic() {
        let c = ExperimentCase::preset(CaseId::A3);
        let a = run_case(&c).unwrap();
        let b = run_case(&c).unwrap();
        for f in [Format::Csv, Format::Json] {
            assert_eq!(emit_results(&a, f), emit_results(&b, f));
        }
    }

    #[test]
    fn format_parse() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
