//! Small dense solvers: Cholesky for symmetric positive-definite systems,
//! Levinson-Durbin for symmetric Toeplitz systems, and the Capon quadratic
//! form `eᴴ R⁻¹ e`.

use std::f64::consts::TAU;

use crate::autocorr::AcfSequence;
use crate::error::{invalid, Error, Result};

/// Row-major symmetric matrix. Only the upper triangle is ever evaluated;
/// the lower triangle is mirrored so `(i, j)` and `(j, i)` are bit-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        Self { dim, entries }
    }

    /// Builds from explicit rows, rejecting anything not exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(invalid("matrix rows must form a square"));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(invalid(format!("entry ({i},{j}) differs from ({j},{i})")));
                }
            }
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, value: f64) -> Self {
        Self::from_fn(dim, |i, j| if i == j { value } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `A = L Lᵀ` with `L` lower triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
    /// Squared diagonal of `L`, i.e. the pivots before the square root.
    pivots: Vec<f64>,
    max_diag: f64,
}

impl Cholesky {
    pub fn factor(m: &SymmetricMatrix) -> Result<Self> {
        let n = m.dim();
        if n == 0 {
            return Err(invalid("cannot factor an empty matrix"));
        }
        let mut lower = vec![0.0; n * n];
        let mut pivots = Vec::with_capacity(n);
        for j in 0..n {
            let mut d = m.get(j, j);
            for k in 0..j {
                d -= lower[j * n + k] * lower[j * n + k];
            }
            if d.is_nan() || d <= 0.0 {
                return Err(Error::NotPositiveDefinite { row: j, pivot: d });
            }
            pivots.push(d);
            let ljj = d.sqrt();
            lower[j * n + j] = ljj;
            for i in j + 1..n {
                let mut s = m.get(i, j);
                for k in 0..j {
                    s -= lower[i * n + k] * lower[j * n + k];
                }
                lower[i * n + j] = s / ljj;
            }
        }
        let max_diag = (0..n).map(|i| m.get(i, i)).fold(0.0, f64::max);
        Ok(Self {
            dim: n,
            lower,
            pivots,
            max_diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest pivot relative to the largest diagonal entry. Values near
    /// machine epsilon mean the matrix is numerically rank deficient even
    /// though every pivot came out positive.
    pub fn relative_min_pivot(&self) -> f64 {
        let min = self.pivots.iter().copied().fold(f64::INFINITY, f64::min);
        min / self.max_diag
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        assert_eq!(rhs.len(), self.dim, "right-hand side has the wrong length");
        let n = self.dim;
        let l = |i: usize, j: usize| self.lower[i * n + j];
        let mut y = rhs.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= l(i, k) * y[k];
            }
            y[i] /= l(i, i);
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= l(k, i) * y[k];
            }
            y[i] /= l(i, i);
        }
        y
    }
}

/// Solves `m y = rhs` for symmetric positive-definite `m`.
pub fn spd_solve(m: &SymmetricMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != m.dim() {
        return Err(invalid(format!(
            "right-hand side length {} does not match dimension {}",
            rhs.len(),
            m.dim()
        )));
    }
    Ok(Cholesky::factor(m)?.solve(rhs))
}

/// Output of the Levinson-Durbin recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonSolution {
    /// Prediction coefficients `a(1..=p)` of `1 + Σ a(k) z^-k`.
    pub coeffs: Vec<f64>,
    /// `r(0) + Σ a(k) r(-k)`.
    pub noise_power: f64,
    /// Reflection coefficients, one per recursion step.
    pub reflection: Vec<f64>,
}

/// Singularity threshold on the prediction-error power, relative to `r(0)`.
pub const LEVINSON_SINGULAR_RATIO: f64 = 1e-30;

/// Solves the Toeplitz normal equations `Σ_k a(k) r(j-k) = -r(j)`,
/// `j = 1..=order`, by the Levinson-Durbin recursion.
pub fn levinson_solve(acf: &AcfSequence, order: usize) -> Result<LevinsonSolution> {
    if order == 0 {
        return Err(invalid("order must be at least 1"));
    }
    acf.require_lags(order)?;
    let r = acf.lags();
    if r[0] <= 0.0 {
        return Err(invalid("r(0) must be positive"));
    }

    let mut a: Vec<f64> = Vec::with_capacity(order);
    let mut reflection = Vec::with_capacity(order);
    let mut err = r[0];
    for m in 1..=order {
        if err <= LEVINSON_SINGULAR_RATIO * r[0] {
            return Err(Error::SingularRecursion {
                step: m,
                power: err,
            });
        }
        let acc = r[m] + (1..m).map(|i| a[i - 1] * r[m - i]).sum::<f64>();
        let k = -acc / err;
        let prev = a.clone();
        for i in 1..m {
            a[i - 1] = prev[i - 1] + k * prev[m - i - 1];
        }
        a.push(k);
        reflection.push(k);
        err *= 1.0 - k * k;
    }

    let noise_power = r[0]
        + a.iter()
            .enumerate()
            .map(|(i, ak)| ak * r[i + 1])
            .sum::<f64>();
    Ok(LevinsonSolution {
        coeffs: a,
        noise_power,
        reflection,
    })
}

/// Relative bound on the discarded imaginary part of `eᴴ R⁻¹ e`.
pub const QUADRATIC_FORM_IMAG_TOL: f64 = 1e-8;

/// `eᴴ R⁻¹ e` for the steering vector `e_k = exp(-j 2π f k)`,
/// `k = 0..dim`, where `factor` holds the Cholesky factor of `R`.
///
/// `R` is real, so `R⁻¹ e` is obtained from two real solves. The imaginary
/// part of the product vanishes analytically; it is checked, then dropped.
pub fn hermitian_quadratic_form(factor: &Cholesky, freq: f64) -> Result<f64> {
    let dim = factor.dim();
    let (e_re, e_im): (Vec<f64>, Vec<f64>) = (0..dim)
        .map(|k| {
            let (s, c) = (TAU * freq * k as f64).sin_cos();
            (c, -s)
        })
        .unzip();
    let z_re = factor.solve(&e_re);
    let z_im = factor.solve(&e_im);

    let mut real = 0.0;
    let mut imag = 0.0;
    for k in 0..dim {
        // conj(e_k) · z_k
        real += e_re[k] * z_re[k] + e_im[k] * z_im[k];
        imag += e_re[k] * z_im[k] - e_im[k] * z_re[k];
    }
    if imag.abs() > QUADRATIC_FORM_IMAG_TOL * real.abs() {
        return Err(Error::ComplexResidue { real, imag });
    }
    if real <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            row: 0,
            pivot: real,
        });
    }
    Ok(real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocorr::{toeplitz_from_acf, AcfSource};
    use crate::rng::SplitMix64;
    use crate::signal_model::{exact_acf, ExactAcfSpec};
    use proptest::prelude::*;

    fn acf(v: &[f64]) -> AcfSequence {
        AcfSequence::new(v.to_vec(), AcfSource::Exact).unwrap()
    }

    fn case_b1(max_lag: usize) -> AcfSequence {
        exact_acf(&ExactAcfSpec {
            amp_a: 5.0,
            amp_b: 5.0,
            freq1: 0.2,
            freq2: 0.3,
            max_lag,
        })
        .unwrap()
    }

    /// Gaussian elimination with partial pivoting on a dense copy.
    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
            x[i] = (b[i] - s) / a[i][i];
        }
        x
    }

    fn toeplitz_system(r: &[f64], p: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let a = (0..p)
            .map(|i| (0..p).map(|j| r[i.abs_diff(j)]).collect())
            .collect();
        let b = (1..=p).map(|j| -r[j]).collect();
        (a, b)
    }

    fn random_spd(seed: u64, n: usize) -> SymmetricMatrix {
        let mut rng = SplitMix64::new(seed);
        let g: Vec<f64> = (0..n * n).map(|_| rng.next_f64() - 0.5).collect();
        SymmetricMatrix::from_fn(n, |i, j| {
            let dot: f64 = (0..n).map(|k| g[i * n + k] * g[j * n + k]).sum();
            dot + if i == j { 0.1 } else { 0.0 }
        })
    }

    #[test]
    fn one_tap_levinson() {
        let s = levinson_solve(&acf(&[1.0, 0.5]), 1).unwrap();
        assert!((s.coeffs[0] + 0.5).abs() < 1e-15);
        assert!((s.noise_power - 0.75).abs() < 1e-15);
    }

    #[test]
    fn white_noise_levinson() {
        let s = levinson_solve(&acf(&[1.0, 0.0, 0.0, 0.0]), 3).unwrap();
        assert!(s.coeffs.iter().all(|&a| a == 0.0));
        assert_eq!(s.noise_power, 1.0);
    }

    #[test]
    fn levinson_matches_dense_solve_case_b1() {
        let r = case_b1(5);
        let s = levinson_solve(&r, 5).unwrap();
        let (a, b) = toeplitz_system(r.lags(), 5);
        let oracle = dense_solve(a, b);
        for (x, y) in s.coeffs.iter().zip(&oracle) {
            assert!((x - y).abs() <= 1e-8 * y.abs().max(1.0), "{x} vs {y}");
        }
        assert!(s.noise_power > 0.0);
    }

    #[test]
    fn levinson_rejects_bad_input() {
        assert!(levinson_solve(&acf(&[1.0, 0.5]), 0).is_err());
        assert!(levinson_solve(&acf(&[1.0, 0.5]), 2).is_err());
        assert!(levinson_solve(&acf(&[0.0, 0.0]), 1).is_err());
    }

    #[test]
    fn levinson_reports_singularity() {
        // A constant is perfectly predicted by one tap; the error power is
        // then exactly zero.
        match levinson_solve(&acf(&[1.0, 1.0, 1.0]), 2) {
            Err(Error::SingularRecursion { step, .. }) => assert_eq!(step, 2),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn spd_identity_and_diagonal() {
        assert_eq!(
            spd_solve(&SymmetricMatrix::identity(2), &[3.0, 4.0]).unwrap(),
            vec![3.0, 4.0]
        );
        let d = SymmetricMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let y = spd_solve(&d, &[2.0, 4.0]).unwrap();
        assert!(y.iter().all(|v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn spd_random_residual() {
        let m = random_spd(2024, 8);
        let rhs: Vec<f64> = (0..8).map(|i| i as f64 - 3.5).collect();
        let y = spd_solve(&m, &rhs).unwrap();
        let res: f64 = m
            .mul_vec(&y)
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let norm: f64 = rhs.iter().map(|b| b * b).sum::<f64>().sqrt();
        assert!(res <= 1e-8 * norm);
    }

    #[test]
    fn spd_rejects_indefinite() {
        let m = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(
            spd_solve(&m, &[1.0, 1.0]),
            Err(Error::NotPositiveDefinite { row: 1, .. })
        ));
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).is_err());
    }

    #[test]
    fn quadratic_form_scalar_matrices() {
        let f = Cholesky::factor(&SymmetricMatrix::identity(6)).unwrap();
        for freq in [0.0, 0.13, 0.25, 0.49] {
            assert!((hermitian_quadratic_form(&f, freq).unwrap() - 6.0).abs() < 1e-12);
        }
        let f = Cholesky::factor(&SymmetricMatrix::scaled_identity(4, 2.0)).unwrap();
        assert!((hermitian_quadratic_form(&f, 0.31).unwrap() - 2.0).abs() < 1e-12);
    }

    /// Explicit complex evaluation: invert R by Gauss-Jordan, then form
    /// Σ_ij conj(e_i) (R⁻¹)_ij e_j with full complex arithmetic.
    fn brute_quadratic_form(r: &[Vec<f64>], freq: f64) -> (f64, f64) {
        let n = r.len();
        let inv: Vec<Vec<f64>> = (0..n)
            .map(|c| {
                let unit: Vec<f64> = (0..n).map(|i| if i == c { 1.0 } else { 0.0 }).collect();
                dense_solve(r.to_vec(), unit)
            })
            .collect(); // columns of R⁻¹
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..n {
            for j in 0..n {
                // conj(e_i) e_j = exp(j 2π f (i - j))
                let phase = TAU * freq * (i as f64 - j as f64);
                re += inv[j][i] * phase.cos();
                im += inv[j][i] * phase.sin();
            }
        }
        (re, im)
    }

    #[test]
    fn quadratic_form_matches_complex_oracle_case_b1() {
        let r = case_b1(4);
        let t = toeplitz_from_acf(&r, 5).unwrap();
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| t.get(i, j)).collect())
            .collect();
        let f = Cholesky::factor(&t.to_symmetric()).unwrap();
        for freq in [0.2, 0.05, 0.3, 0.4417] {
            let got = hermitian_quadratic_form(&f, freq).unwrap();
            let (re, im) = brute_quadratic_form(&rows, freq);
            assert!(im.abs() < 1e-10 * re);
            assert!((got - re).abs() <= 1e-8 * re, "{got} vs {re}");
        }
    }

    proptest! {
        #[test]
        fn levinson_agrees_with_cholesky(seed in any::<u64>(), p in 1usize..10) {
            let x = crate::signal_model::gaussian_noise(1.0, 64, seed).unwrap();
            let r = crate::autocorr::biased_acf(&x, p).unwrap();
            let lev = levinson_solve(&r, p).unwrap();
            let t = toeplitz_from_acf(&r, p).unwrap().to_symmetric();
            let rhs: Vec<f64> = r.lags()[1..=p].iter().map(|v| -v).collect();
            let chol = spd_solve(&t, &rhs).unwrap();
            for (a, b) in lev.coeffs.iter().zip(&chol) {
                prop_assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
            }
            prop_assert!(lev.reflection.iter().all(|k| k.abs() <= 1.0 + 1e-10));
            prop_assert!(lev.noise_power >= 0.0);
        }

        #[test]
        fn quadratic_form_positive(seed in any::<u64>(), n in 1usize..10, freq in 0.0f64..0.5) {
            let f = Cholesky::factor(&random_spd(seed, n)).unwrap();
            prop_assert!(hermitian_quadratic_form(&f, freq).unwrap() > 0.0);
        }
    }
}
