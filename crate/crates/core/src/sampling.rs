//! Seeded random inputs for the audits. Samples are drawn sequentially from
//! one ChaCha stream so they do not depend on the execution mode.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` vectors in `R^dim` with independent standard normal entries.
pub fn gaussian_vectors(seed: u64, n: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| (0..dim).map(|_| r.sample(StandardNormal)).collect())
        .collect()
}

/// `n` uniformly distributed unit vectors in `R^dim`.
pub fn unit_vectors(seed: u64, n: usize, dim: usize) -> Vec<Vec<f64>> {
    gaussian_vectors(seed, n, dim)
        .into_iter()
        .map(|mut v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            v
        })
        .collect()
}

/// `n` points uniform in the box `lo..hi` (per coordinate).
pub fn uniform_points(seed: u64, n: usize, lo: &[f64], hi: &[f64]) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            lo.iter()
                .zip(hi)
                .map(|(a, b)| a + (b - a) * r.random::<f64>())
                .collect()
        })
        .collect()
}
