//! Walsh analysis on the finite dyadic group {-1,1}^n.
//!
//! Group points and characters share one encoding: an n-bit mask. The
//! character `w` evaluated at the point `ω` is (-1)^popcount(w & ω), so
//! bit α of a point mask set means coordinate α equals -1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Largest number of coordinates any domain (or cascade level) may have.
pub const MAX_COORDS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicDomain {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl DyadicDomain {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_COORDS {
            return Err(Error::SizeCap { n, cap: MAX_COORDS });
        }
        Ok(Self { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut d = Self::new(labels.len())?;
        d.labels = Some(labels);
        Ok(d)
    }

    /// Domain whose group has `len` points; `len` must be a power of two.
    pub fn from_len(len: usize) -> Result<Self> {
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Self::new(len.trailing_zeros() as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_same(&self, other: &DyadicDomain) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DomainMismatch(self.n, other.n));
        }
        Ok(())
    }
}

/// Value of the character `w` at the point `omega`.
pub fn character(w: usize, omega: usize) -> f64 {
    if (w & omega).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn is_singleton(mask: usize) -> bool {
    mask != 0 && mask & (mask - 1) == 0
}

pub fn has_odd_order(mask: usize) -> bool {
    mask.count_ones() % 2 == 1
}

/// Unnormalized in-place butterfly; applying it twice multiplies by 2^n.
pub fn fwht_in_place(data: &mut [Complex64]) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h *= 2;
    }
}

/// Real-valued twin of [`fwht_in_place`].
pub fn fwht_real_in_place(data: &mut [f64]) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h *= 2;
    }
}

/// ℓ^s norm of a list of magnitudes, s in [1, ∞]. Scaled by the maximum
/// so large exponents do not overflow.
pub fn seq_norm(mags: impl IntoIterator<Item = f64>, s: f64) -> f64 {
    let mags: Vec<f64> = mags.into_iter().collect();
    let m = mags.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if m == 0.0 || s.is_infinite() {
        return m;
    }
    if s == 1.0 {
        return mags.iter().map(|v| v.abs()).sum();
    }
    let sum: f64 = mags.iter().map(|v| (v.abs() / m).powf(s)).sum();
    m * sum.powf(1.0 / s)
}

pub fn real_norm(x: &[f64], s: f64) -> f64 {
    seq_norm(x.iter().copied(), s)
}

pub fn complex_norm(x: &[Complex64], s: f64) -> f64 {
    seq_norm(x.iter().map(|z| z.norm()), s)
}

fn check_exponent(name: &'static str, p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(param(name, p, "must lie in [1, inf]"));
    }
    Ok(())
}

/// Bilinear dot product Σ x(α)y(α); no conjugation.
pub fn dot(x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).sum())
}

pub fn real_dot(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).sum())
}

/// Coefficient side of a function on the group.
#[derive(Clone, Debug, PartialEq)]
pub struct WalshSeries {
    domain: DyadicDomain,
    coeffs: Vec<Complex64>,
}

/// Value side of a function on the group.
#[derive(Clone, Debug, PartialEq)]
pub struct PointValues {
    domain: DyadicDomain,
    values: Vec<Complex64>,
}

impl WalshSeries {
    pub fn new(domain: DyadicDomain, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != domain.size() {
            return Err(Error::LengthMismatch(coeffs.len(), domain.size()));
        }
        Ok(Self { domain, coeffs })
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        let domain = DyadicDomain::from_len(coeffs.len())?;
        Ok(Self { domain, coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(domain: DyadicDomain) -> Self {
        let len = domain.size();
        Self {
            domain,
            coeffs: vec![Complex64::default(); len],
        }
    }

    /// The Rademacher sum Σ x(α) r_α as a series on n = x.len() coordinates.
    pub fn rademacher_sum(x: &[Complex64]) -> Result<Self> {
        let mut out = Self::zero(DyadicDomain::new(x.len())?);
        for (a, &v) in x.iter().enumerate() {
            out.coeffs[1 << a] = v;
        }
        Ok(out)
    }

    pub fn domain(&self) -> &DyadicDomain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.domain.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn to_points(&self) -> PointValues {
        ifwht(self)
    }

    /// Keeps coefficients whose mask satisfies `keep`, zeroing the rest.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(w, &c)| if keep(w) { c } else { Complex64::default() })
            .collect();
        Self {
            domain: self.domain.clone(),
            coeffs,
        }
    }

    /// Coefficients at the singleton masks, in coordinate order.
    pub fn singleton_coeffs(&self) -> Vec<Complex64> {
        (0..self.n()).map(|a| self.coeffs[1 << a]).collect()
    }

    pub fn ls_norm(&self, s: f64) -> Result<f64> {
        check_exponent("s", s)?;
        Ok(complex_norm(&self.coeffs, s))
    }

    pub fn sup_norm(&self) -> f64 {
        self.to_points().sup_norm()
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        self.to_points().lp_norm(p)
    }

    pub fn m_norm(&self) -> f64 {
        self.to_points().m_norm()
    }

    /// max(‖f‖_∞, ‖f̂‖_s).
    pub fn linf_s_norm(&self, s: f64) -> Result<f64> {
        Ok(self.sup_norm().max(self.ls_norm(s)?))
    }

    /// max(‖f‖_M, ‖f̂‖_s), with the measure norm taken as the L¹ norm of
    /// the density.
    pub fn m_s_norm(&self, s: f64) -> Result<f64> {
        Ok(self.m_norm().max(self.ls_norm(s)?))
    }

    /// Bilinear pairing Σ_w f̂(w)ĝ(w), equal to the mean of f·g.
    pub fn pairing(&self, other: &WalshSeries) -> Result<Complex64> {
        self.domain.check_same(&other.domain)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Sesquilinear pairing Σ_w f̂(w)conj(ĝ(w)).
    pub fn inner(&self, other: &WalshSeries) -> Result<Complex64> {
        self.domain.check_same(&other.domain)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn add(&self, other: &WalshSeries) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &WalshSeries) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            domain: self.domain.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &WalshSeries,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.domain.check_same(&other.domain)?;
        Ok(Self {
            domain: self.domain.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &WalshSeries) -> Result<f64> {
        self.domain.check_same(&other.domain)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> SignalJson {
        SignalJson::new(self.n(), Side::Coeff, &self.coeffs)
    }
}

impl PointValues {
    pub fn new(domain: DyadicDomain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.size() {
            return Err(Error::LengthMismatch(values.len(), domain.size()));
        }
        Ok(Self { domain, values })
    }

    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        let domain = DyadicDomain::from_len(values.len())?;
        Ok(Self { domain, values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::from_values(values.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Point values of Σ x(α) r_α, built by doubling in O(2^n).
    pub fn rademacher_sum(x: &[Complex64]) -> Result<Self> {
        let domain = DyadicDomain::new(x.len())?;
        let mut values = Vec::with_capacity(domain.size());
        values.push(Complex64::default());
        for &xa in x {
            let half = values.len();
            for i in 0..half {
                let v = values[i];
                values.push(v - xa);
                values[i] = v + xa;
            }
        }
        Ok(Self { domain, values })
    }

    pub fn domain(&self) -> &DyadicDomain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.domain.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn to_series(&self) -> WalshSeries {
        fwht(self)
    }

    /// (2^-n Σ|f(ω)|^p)^{1/p}; p = ∞ gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        check_exponent("p", p)?;
        if p.is_infinite() {
            return Ok(self.sup_norm());
        }
        let scale = (self.values.len() as f64).powf(-1.0 / p);
        Ok(scale * complex_norm(&self.values, p))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Total variation of the measure with density f, i.e. the L¹ norm.
    pub fn m_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum::<f64>() / self.values.len() as f64
    }

    /// Mean of f·g.
    pub fn pairing(&self, other: &PointValues) -> Result<Complex64> {
        self.domain.check_same(&other.domain)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum();
        Ok(s / self.values.len() as f64)
    }

    /// Mean of f·conj(g).
    pub fn inner(&self, other: &PointValues) -> Result<Complex64> {
        self.domain.check_same(&other.domain)?;
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s / self.values.len() as f64)
    }

    pub fn to_json(&self) -> SignalJson {
        SignalJson::new(self.n(), Side::Point, &self.values)
    }
}

pub fn fwht(values: &PointValues) -> WalshSeries {
    let mut coeffs = values.values.clone();
    fwht_in_place(&mut coeffs);
    let scale = 1.0 / coeffs.len() as f64;
    for c in &mut coeffs {
        *c *= scale;
    }
    WalshSeries {
        domain: values.domain.clone(),
        coeffs,
    }
}

pub fn ifwht(series: &WalshSeries) -> PointValues {
    let mut values = series.coeffs.clone();
    fwht_in_place(&mut values);
    PointValues {
        domain: series.domain.clone(),
        values,
    }
}

/// Normalized transform of a raw slice; errors unless the length is a power of two.
pub fn fwht_slice(values: &[Complex64]) -> Result<Vec<Complex64>> {
    Ok(fwht(&PointValues::from_values(values.to_vec())?).coeffs)
}

/// Coefficient-wise product, the transform of the group convolution.
pub fn convolve(f: &WalshSeries, g: &WalshSeries) -> Result<WalshSeries> {
    f.zip_with(g, |a, b| a * b)
}

pub fn lp_norm(f: &PointValues, p: f64) -> Result<f64> {
    f.lp_norm(p)
}

pub fn ls_coeff_norm(f: &WalshSeries, s: f64) -> Result<f64> {
    f.ls_norm(s)
}

pub fn sup_norm(f: &PointValues) -> f64 {
    f.sup_norm()
}

pub fn m_norm(f: &PointValues) -> f64 {
    f.m_norm()
}

/// Both sides of ‖f‖_2 ≤ ‖f‖_1^{(p-2)/(2p-2)} ‖f‖_p^{p/(2p-2)} for p > 2.
pub fn log_convexity_sides(f: &PointValues, p: f64) -> Result<(f64, f64)> {
    if !(p > 2.0) {
        return Err(param("p", p, "must exceed 2"));
    }
    let l1 = f.lp_norm(1.0)?;
    let l2 = f.lp_norm(2.0)?;
    let lp = f.lp_norm(p)?;
    let rhs = if p.is_infinite() {
        (l1 * lp).sqrt()
    } else {
        l1.powf((p - 2.0) / (2.0 * p - 2.0)) * lp.powf(p / (2.0 * p - 2.0))
    };
    Ok((l2, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Coeff,
    Point,
}

/// Interchange form: `{"n", "side", "re", "im"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalJson {
    pub n: usize,
    pub side: Side,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

/// A function on the group given on either side of the transform.
#[derive(Clone, Debug, PartialEq)]
pub enum Signal {
    Coeff(WalshSeries),
    Point(PointValues),
}

impl SignalJson {
    fn new(n: usize, side: Side, data: &[Complex64]) -> Self {
        Self {
            n,
            side,
            re: data.iter().map(|z| z.re).collect(),
            im: data.iter().map(|z| z.im).collect(),
        }
    }

    pub fn into_signal(self) -> Result<Signal> {
        let domain = DyadicDomain::new(self.n)?;
        let im = if self.im.is_empty() {
            vec![0.0; self.re.len()]
        } else {
            self.im
        };
        if im.len() != self.re.len() {
            return Err(Error::LengthMismatch(self.re.len(), im.len()));
        }
        let data: Vec<Complex64> = self
            .re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Ok(match self.side {
            Side::Coeff => Signal::Coeff(WalshSeries::new(domain, data)?),
            Side::Point => Signal::Point(PointValues::new(domain, data)?),
        })
    }
}

impl Signal {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SignalJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_signal()
    }

    pub fn to_json(&self) -> SignalJson {
        match self {
            Signal::Coeff(s) => s.to_json(),
            Signal::Point(p) => p.to_json(),
        }
    }

    pub fn into_series(self) -> WalshSeries {
        match self {
            Signal::Coeff(s) => s,
            Signal::Point(p) => p.to_series(),
        }
    }

    pub fn into_points(self) -> PointValues {
        match self {
            Signal::Coeff(s) => s.to_points(),
            Signal::Point(p) => p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_values(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
        (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    // O(4^n) summation straight from the definition.
    fn naive_transform(values: &[Complex64]) -> Vec<Complex64> {
        let len = values.len();
        (0..len)
            .map(|w| {
                let s: Complex64 = (0..len).map(|om| values[om] * character(w, om)).sum();
                s / len as f64
            })
            .collect()
    }

    fn naive_group_convolution(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
        let len = f.len();
        (0..len)
            .map(|om| {
                let s: Complex64 = (0..len).map(|tau| f[om ^ tau] * g[tau]).sum();
                s / len as f64
            })
            .collect()
    }

    #[test]
    fn constant_and_single_character() {
        let one = fwht(&PointValues::from_real(&[1.0, 1.0]).unwrap());
        assert_eq!(one.coeffs(), &[c(1.0), c(0.0)]);
        let r1 = fwht(&PointValues::from_real(&[1.0, -1.0]).unwrap());
        assert_eq!(r1.coeffs(), &[c(0.0), c(1.0)]);
    }

    #[test]
    fn transform_matches_naive_oracle_and_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=8 {
            let vals = random_values(&mut rng, 1 << n);
            let pv = PointValues::from_values(vals.clone()).unwrap();
            let series = fwht(&pv);
            if n <= 6 {
                let naive = naive_transform(&vals);
                for (a, b) in series.coeffs().iter().zip(&naive) {
                    assert!((a - b).norm() < 1e-13);
                }
            }
            let back = ifwht(&series);
            for (a, b) in back.values().iter().zip(&vals) {
                assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn rejects_bad_lengths_and_caps() {
        assert_eq!(fwht_slice(&[c(1.0); 3]), Err(Error::NotPowerOfTwo(3)));
        assert!(matches!(DyadicDomain::new(21), Err(Error::SizeCap { .. })));
        assert!(DyadicDomain::new(20).is_ok());
    }

    #[test]
    fn dot_examples() {
        let i = Complex64::i();
        assert_eq!(dot(&[c(1.0), c(0.0)], &[c(0.0), c(1.0)]).unwrap(), c(0.0));
        assert_eq!(dot(&[i, c(1.0)], &[i, c(1.0)]).unwrap(), c(0.0));
        assert!(matches!(dot(&[c(1.0)], &[]), Err(Error::LengthMismatch(1, 0))));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_values(&mut rng, 17);
        let y = random_values(&mut rng, 17);
        let mut acc = Complex64::default();
        for k in 0..17 {
            acc += x[k] * y[k];
        }
        assert!((dot(&x, &y).unwrap() - acc).norm() < 1e-14);
    }

    #[test]
    fn convolution_examples() {
        let r1 = WalshSeries::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(convolve(&r1, &r1).unwrap(), r1);
        let a = WalshSeries::from_real(&[1.0, 1.0]).unwrap();
        let b = WalshSeries::from_real(&[1.0, -1.0]).unwrap();
        assert_eq!(convolve(&a, &b).unwrap(), b);
        let other = WalshSeries::zero(DyadicDomain::new(2).unwrap());
        assert!(matches!(convolve(&a, &other), Err(Error::DomainMismatch(1, 2))));
    }

    #[test]
    fn convolution_theorem_against_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..=6 {
            let f = random_values(&mut rng, 1 << n);
            let g = random_values(&mut rng, 1 << n);
            let fs = fwht(&PointValues::from_values(f.clone()).unwrap());
            let gs = fwht(&PointValues::from_values(g.clone()).unwrap());
            let via_transform = ifwht(&convolve(&fs, &gs).unwrap());
            let oracle = naive_group_convolution(&f, &g);
            for (a, b) in via_transform.values().iter().zip(&oracle) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn norm_examples() {
        let r1 = WalshSeries::from_real(&[0.0, 1.0]).unwrap().to_points();
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            assert_relative_eq!(r1.lp_norm(p).unwrap(), 1.0);
        }
        let f = WalshSeries::from_real(&[0.0, 1.0, 1.0, 0.0]).unwrap();
        let pts = f.to_points();
        assert_relative_eq!(pts.lp_norm(1.0).unwrap(), 1.0);
        assert_relative_eq!(pts.lp_norm(2.0).unwrap(), 2f64.sqrt());
        assert_relative_eq!(pts.sup_norm(), 2.0);
        assert_relative_eq!(f.ls_norm(1.0).unwrap(), 2.0);
        assert_relative_eq!(pts.m_norm(), 1.0);
        assert_relative_eq!(f.linf_s_norm(2.0).unwrap(), 2.0);
        assert!(f.ls_norm(0.5).is_err());
        assert!(pts.lp_norm(0.0).is_err());
    }

    #[test]
    fn seq_norm_survives_large_exponents() {
        let v = [1e200, 1e200];
        assert_relative_eq!(seq_norm(v, 2.0), 2f64.sqrt() * 1e200, max_relative = 1e-12);
        assert_relative_eq!(seq_norm([3.0, 4.0], 1000.0), 4.0, max_relative = 1e-9);
    }

    #[test]
    fn rademacher_points_match_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = random_values(&mut rng, 7);
        let direct = PointValues::rademacher_sum(&x).unwrap();
        let via = WalshSeries::rademacher_sum(&x).unwrap().to_points();
        for (a, b) in direct.values().iter().zip(via.values()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = WalshSeries::from_coeffs(vec![Complex64::new(1.0, -2.0), c(0.5)]).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert!(text.contains("\"side\":\"coeff\""));
        let back = Signal::from_json(&text).unwrap();
        assert_eq!(back, Signal::Coeff(s));
        let bad = r#"{"n":2,"side":"point","re":[1,2,3]}"#;
        assert!(Signal::from_json(bad).is_err());
    }

    proptest! {
        #[test]
        fn parseval_both_forms(seed in any::<u64>(), n in 0usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = PointValues::from_values(random_values(&mut rng, 1 << n)).unwrap();
            let g = PointValues::from_values(random_values(&mut rng, 1 << n)).unwrap();
            let (fs, gs) = (f.to_series(), g.to_series());
            let ses = f.inner(&g).unwrap() - fs.inner(&gs).unwrap();
            let bil = f.pairing(&g).unwrap() - fs.pairing(&gs).unwrap();
            prop_assert!(ses.norm() < 1e-12);
            prop_assert!(bil.norm() < 1e-12);
        }

        #[test]
        fn transform_is_linear(seed in any::<u64>(), n in 0usize..7, a in -3.0f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_values(&mut rng, 1 << n);
            let g = random_values(&mut rng, 1 << n);
            let mix: Vec<Complex64> = f.iter().zip(&g).map(|(u, v)| u * a + v).collect();
            let lhs = fwht_slice(&mix).unwrap();
            let (tf, tg) = (fwht_slice(&f).unwrap(), fwht_slice(&g).unwrap());
            for k in 0..lhs.len() {
                prop_assert!((lhs[k] - (tf[k] * a + tg[k])).norm() < 1e-12);
            }
        }

        #[test]
        fn log_convexity(seed in any::<u64>(), n in 1usize..8, p in 2.01f64..12.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = PointValues::from_values(random_values(&mut rng, 1 << n)).unwrap();
            let (lhs, rhs) = log_convexity_sides(&f, p).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}
