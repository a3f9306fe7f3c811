//! Seedable, splittable standard normal source.
//!
//! Uniforms come from ChaCha8 seeded by a 64-bit key; normals are produced by
//! the Box–Muller transform, using both outputs of each pair. Child sources are
//! keyed by `(parent seed, stream id)` through a SplitMix64 mix, so parallel
//! work that derives one child per task reproduces bit-for-bit regardless of
//! scheduling.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct GaussianSource {
    seed: u64,
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combines a seed with a stream id into a new 64-bit seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(stream.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        GaussianSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent source keyed by `(self.seed, stream)`; does not consume
    /// any state from `self`.
    pub fn child(&self, stream: u64) -> GaussianSource {
        GaussianSource::new(derive_seed(self.seed, stream))
    }

    /// Uniform on `(0, 1]` with 53 random bits.
    fn uniform_open0(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open0();
        let u2 = self.uniform_open0();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Uniform integer in `0..n` (multiply-shift reduction).
    pub fn uniform_below(&mut self, n: usize) -> usize {
        ((self.rng.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn normals(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_normal()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_replays() {
        let a = GaussianSource::new(42).normals(1000);
        let b = GaussianSource::new(42).normals(1000);
        assert_eq!(a, b);
    }

    #[test]
    fn child_is_pure_function_of_key() {
        let p = GaussianSource::new(7);
        let mut q = GaussianSource::new(7);
        q.normals(13);
        assert_eq!(p.child(3).normals(50), q.child(3).normals(50));
        assert_ne!(p.child(3).normals(50), p.child(4).normals(50));
    }

    #[test]
    fn moments_and_cross_correlation() {
        let n = 100_000;
        let a = GaussianSource::new(1).normals(n);
        let b = GaussianSource::new(2).normals(n);
        let mean = a.iter().sum::<f64>() / n as f64;
        let var = a.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        let kurt = a.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n as f64 / var.powi(2);
        assert!(mean.abs() < 0.015, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
        assert!((kurt - 3.0).abs() < 0.1, "kurtosis {kurt}");
        let mb = b.iter().sum::<f64>() / n as f64;
        let vb = b.iter().map(|x| (x - mb).powi(2)).sum::<f64>() / n as f64;
        let cov = a.iter().zip(&b).map(|(x, y)| (x - mean) * (y - mb)).sum::<f64>() / n as f64;
        let rho = cov / (var * vb).sqrt();
        assert!(rho.abs() < 0.05, "rho {rho}");
    }
}
