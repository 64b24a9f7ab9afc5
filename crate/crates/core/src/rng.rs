//! Deterministic pseudo-random source.
//!
//! SplitMix64 feeds a Box-Muller transform. Both are simple enough to port
//! verbatim, so a given seed yields the same noise stream in any language.

use std::f64::consts::TAU;

/// Weyl-sequence increment of SplitMix64.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normal variates (Box-Muller).
    ///
    /// The radius draw uses `1 - u` so the logarithm never sees zero.
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (radius * c, radius * s)
    }
}

/// `len` standard normal variates. Pairs are consumed whole; for odd `len`
/// the final spare variate is dropped.
pub fn standard_normals(seed: u64, len: usize) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(len + 1);
    while out.len() < len {
        let (a, b) = rng.next_normal_pair();
        out.push(a);
        out.push(b);
    }
    out.truncate(len);
    out
}
