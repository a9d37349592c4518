//! Seeded random inputs. Every random draw in the crate goes through ChaCha8
//! so a single u64 seed reproduces a run on any machine.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for item `index` of a seeded batch, so parallel
/// workers draw the same values as a serial loop would.
pub fn stream(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn gaussian(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn gaussian_complex(rng: &mut SeededRng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Uniform point on the Euclidean unit sphere of R^n (n ≥ 1).
pub fn unit_real(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian(rng, n);
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

pub fn unit_complex(rng: &mut SeededRng, n: usize) -> Vec<Complex64> {
    loop {
        let v = gaussian_complex(rng, n);
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn to_complex(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|&a| Complex64::new(a, 0.0)).collect()
}
