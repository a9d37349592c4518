//! Input fixtures shared by the benchmarks.

use wgl_core::{sampling, Complex64, PointValues, TensorInstance};

pub const SEED: u64 = 0x5eed;

pub fn points(n: usize) -> PointValues {
    let mut rng = sampling::rng(SEED ^ n as u64);
    PointValues::from_values(sampling::gaussian_complex(&mut rng, 1 << n)).expect("power-of-two length")
}

pub fn coordinates(n: usize) -> Vec<Complex64> {
    let mut rng = sampling::rng(SEED.wrapping_add(n as u64));
    sampling::to_complex(&sampling::unit_real(&mut rng, n))
}

pub fn real_matrix(rows: usize, cols: usize) -> TensorInstance {
    let mut rng = sampling::rng(SEED ^ ((rows << 8) | cols) as u64);
    let data: Vec<Vec<f64>> = (0..rows).map(|_| sampling::gaussian(&mut rng, cols)).collect();
    TensorInstance::from_real_rows(&data).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        assert_eq!(points(4).values(), points(4).values());
        assert_eq!(coordinates(5).len(), 5);
        assert_eq!(real_matrix(3, 7).cols(), 7);
    }
}
