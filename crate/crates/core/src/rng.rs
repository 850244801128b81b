//! Seeded `(seed, stream)` random streams and complex Gaussian draws.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cxkernel::{ComplexMatrix, C64};

/// Random stream identified by `(seed, stream)`. Equal pairs give identical
/// draw sequences on every platform.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Standard real Gaussian.
    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// `CN(0, var)`: independent real and imaginary parts, each `N(0, var/2)`.
    pub fn complex_normal(&mut self, var: f64) -> C64 {
        let s = (var / 2.0).sqrt();
        let re = self.normal();
        let im = self.normal();
        C64::new(s * re, s * im)
    }

    pub fn complex_normal_matrix(&mut self, rows: usize, cols: usize, var: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(rows, cols);
        // row-major fill so that the draw order matches the matrix file layout
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self.complex_normal(var);
            }
        }
        m
    }

    /// Uniform phase in `[0, 2π)`.
    pub fn phase(&mut self) -> f64 {
        self.inner.random::<f64>() * std::f64::consts::TAU
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.inner.random::<f64>() < p
    }
}

impl RngCore for Rng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// SplitMix64 finalizer; used to derive independent seeds from a base seed
/// and a list of indices.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = base;
    for &p in parts {
        h = splitmix(h ^ splitmix(p.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
