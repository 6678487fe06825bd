//! Seeded sampling of small Gaussian rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::GaussianRational;

/// Deterministic source of sample points: real and imaginary parts have
/// numerators in `[-3, 3]` and denominators in `{1, 2, 3}`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream derived from a seed and a label, so adding a
    /// consumer does not shift the draws of the others.
    pub fn derived(seed: u64, label: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Sampler::new(seed ^ h)
    }

    fn part(&mut self) -> (i64, i64) {
        (self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3))
    }

    pub fn scalar(&mut self) -> GaussianRational {
        let (a, b) = self.part();
        let (c, d) = self.part();
        GaussianRational::complex(a, b, c, d)
    }

    pub fn real(&mut self) -> GaussianRational {
        let (a, b) = self.part();
        GaussianRational::ratio(a, b)
    }

    pub fn nonzero(&mut self) -> GaussianRational {
        loop {
            let s = self.scalar();
            if s != GaussianRational::default() {
                return s;
            }
        }
    }

    pub fn vector(&mut self, n: usize) -> Vec<GaussianRational> {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// Vector scaled by `1/k`, handy for keeping sample points near the origin.
    pub fn small_vector(&mut self, n: usize, k: i64) -> Vec<GaussianRational> {
        let s = GaussianRational::ratio(1, k);
        (0..n).map(|_| &self.scalar() * &s).collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<_> = Sampler::new(7).vector(5);
        let b: Vec<_> = Sampler::new(7).vector(5);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).vector(5));
    }
}
