//! Low-discrepancy spectral points inside a model's box.
//!
//! Additive recurrence x_k = frac(s + k·α) with α built from the
//! generalized golden ratio of the total real dimension, plus a seeded
//! random shift so different seeds give different (but equally uniform)
//! point sets.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::presets::format_complex;
use crate::catalog::Domain;

/// Keeps samples off the box edges.
const INSET: f64 = 0.02;

/// One, two or three spectral values drawn together.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample(pub Vec<C64>);

impl SpectralSample {
    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(|z| format_complex(*z)).collect()
    }
}

impl Serialize for SpectralSample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// Unique positive root of x^{d+1} = x + 1.
fn golden(d: usize) -> f64 {
    let mut x: f64 = 2.0;
    for _ in 0..64 {
        x = (1.0 + x).powf(1.0 / (d as f64 + 1.0));
    }
    x
}

/// FNV-1a, used to derive independent streams from (seed, label).
pub fn stream_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ seed;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub struct Sampler {
    domain: Domain,
    arity: usize,
    alpha: Vec<f64>,
    shift: Vec<f64>,
    next: u64,
}

impl Sampler {
    /// `arity` spectral values per sample, each a point of `domain`.
    pub fn new(domain: Domain, arity: usize, seed: u64) -> Self {
        let dims = 2 * arity;
        let g = golden(dims);
        let alpha = (1..=dims).map(|i| (1.0 / g.powi(i as i32)).fract()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dims).map(|_| rng.gen::<f64>()).collect();
        Sampler { domain, arity, alpha, shift, next: 1 }
    }

    pub fn sample(&mut self) -> SpectralSample {
        let k = self.next as f64;
        self.next += 1;
        let coords: Vec<f64> = self
            .alpha
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| INSET + (1.0 - 2.0 * INSET) * (s + k * a).fract())
            .collect();
        SpectralSample((0..self.arity).map(|i| self.domain.point(coords[2 * i], coords[2 * i + 1])).collect())
    }

    pub fn take(&mut self, count: usize) -> Vec<SpectralSample> {
        (0..count).map(|_| self.sample()).collect()
    }
}
