//! Local-maximum picking with topographic prominence.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Cycles per sample.
    pub frequency: f64,
    pub power: f64,
    pub prominence: f64,
}

/// Indices of interior local maxima. A flat top counts once, at its middle
/// sample, and only if both sides descend from it. Endpoints never qualify.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    if values.len() < 3 {
        return out;
    }
    let last = values.len() - 1;
    let mut i = 1;
    while i < last {
        if values[i - 1] < values[i] {
            let mut ahead = i + 1;
            while ahead < last && values[ahead] == values[i] {
                ahead += 1;
            }
            if values[ahead] < values[i] {
                out.push((i + ahead - 1) / 2);
                i = ahead;
                continue;
            }
        }
        i += 1;
    }
    out
}

/// Height of the peak above the higher of the two lowest points reached
/// before climbing to something taller (or running off the edge).
pub fn prominence(values: &[f64], peak: usize) -> f64 {
    let height = values[peak];
    let mut left_min = height;
    for &v in values[..peak].iter().rev() {
        if v > height {
            break;
        }
        left_min = left_min.min(v);
    }
    let mut right_min = height;
    for &v in &values[peak + 1..] {
        if v > height {
            break;
        }
        right_min = right_min.min(v);
    }
    height - left_min.max(right_min)
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 0 {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    }
}

/// Peaks whose prominence is positive and at least `relative_threshold`
/// times the median of `values`, sorted by descending power.
pub fn find_peaks(frequencies: &[f64], values: &[f64], relative_threshold: f64) -> Vec<Peak> {
    assert_eq!(frequencies.len(), values.len());
    let floor = relative_threshold * median(values);
    let mut peaks: Vec<Peak> = local_maxima(values)
        .into_iter()
        .map(|i| Peak {
            frequency: frequencies[i],
            power: values[i],
            prominence: prominence(values, i),
        })
        .filter(|p| p.prominence > 0.0 && p.prominence >= floor)
        .collect();
    peaks.sort_by(|a, b| {
        b.power
            .total_cmp(&a.power)
            .then(a.frequency.total_cmp(&b.frequency))
    });
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn freqs(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64 * 0.5 / n as f64).collect()
    }

    #[test]
    fn flat_input_has_no_peaks() {
        assert!(find_peaks(&freqs(64), &[3.0; 64], 5.0).is_empty());
        assert!(find_peaks(&freqs(64), &[3.0; 64], 0.0).is_empty());
    }

    #[test]
    fn plateau_reports_middle() {
        let v = [0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0];
        assert_eq!(local_maxima(&v), vec![3]);
        // A shelf that keeps climbing is not a peak.
        assert!(local_maxima(&[0.0, 1.0, 1.0, 2.0, 3.0]).is_empty());
    }

    #[test]
    fn edges_excluded() {
        assert!(local_maxima(&[5.0, 1.0, 0.0]).is_empty());
        assert!(local_maxima(&[0.0, 1.0, 5.0]).is_empty());
    }

    #[test]
    fn prominence_known_values() {
        //          0    1    2    3    4    5    6
        let v = [0.0, 4.0, 1.0, 3.0, 2.0, 6.0, 0.0];
        assert_eq!(local_maxima(&v), vec![1, 3, 5]);
        assert_eq!(prominence(&v, 1), 3.0); // 4 - max(0, 1)
        assert_eq!(prominence(&v, 3), 1.0); // 3 - max(1, 2)
        assert_eq!(prominence(&v, 5), 6.0); // tallest: both sides reach 0
    }

    #[test]
    fn threshold_and_ordering() {
        let v = [1.0, 1.0, 10.0, 1.0, 1.0, 3.0, 1.0, 1.0, 50.0, 1.0, 1.0];
        let p = find_peaks(&freqs(v.len()), &v, 5.0);
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].power, 50.0);
        assert_eq!(p[1].power, 10.0);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    proptest! {
        #[test]
        fn scale_invariant(v in prop::collection::vec(0.0f64..100.0, 3..80), c in 0.001f64..1000.0) {
            let f = freqs(v.len());
            let a = find_peaks(&f, &v, 2.0);
            let scaled: Vec<f64> = v.iter().map(|x| x * c).collect();
            let b = find_peaks(&f, &scaled, 2.0);
            let fa: Vec<f64> = a.iter().map(|p| p.frequency).collect();
            let fb: Vec<f64> = b.iter().map(|p| p.frequency).collect();
            prop_assert_eq!(fa, fb);
        }
    }
}
