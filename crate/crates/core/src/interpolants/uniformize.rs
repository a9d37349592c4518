//! Truncation uniformizers for the Rademacher system.
//!
//! The Rademacher sum U = Σ x(α) r_α is clipped to zero wherever |U| > ξ.
//! The clipped-off part φ is small in L², and its singleton coefficients v
//! are re-interpolated by Q (ε = 1, s = 2). The result g = h + Q(v) has the
//! same singleton coefficients as U and stays within a fixed L² distance of it.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dyadic::{complex_norm, DyadicDomain, PointValues, WalshSeries};
use crate::error::{param, Error, Result};
use crate::riesz::q_interpolant;
use crate::sampling;

/// Khintchin L¹ constant used by the Λ(p) threshold.
pub const KHINTCHIN_L1: f64 = std::f64::consts::SQRT_2;

/// 2^-n Σ exp(|U(ω)|²) for the Rademacher sum of x.
pub fn exp_square_integral(x: &[Complex64]) -> Result<f64> {
    let u = PointValues::rademacher_sum(x)?;
    let len = u.values().len() as f64;
    Ok(u.values().iter().map(|z| z.norm_sqr().exp()).sum::<f64>() / len)
}

fn real_exp_square(x: &[f64]) -> Result<f64> {
    exp_square_integral(&sampling::to_complex(x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpSquareEstimate {
    pub n: usize,
    pub value: f64,
    pub witness: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

/// Largest ∫exp(|U|²) over e_1, the flat unit vector, any extra candidates,
/// and `samples` seeded random unit vectors. Ties keep the earliest candidate.
pub fn estimate_exp_square_constant_with(
    n: usize,
    samples: usize,
    seed: u64,
    extra: &[Vec<f64>],
) -> Result<ExpSquareEstimate> {
    DyadicDomain::new(n)?;
    if n == 0 {
        return Ok(ExpSquareEstimate {
            n,
            value: 1.0,
            witness: Vec::new(),
            samples,
            seed,
        });
    }
    let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(samples + 2 + extra.len());
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    candidates.push(e1);
    candidates.push(vec![1.0 / (n as f64).sqrt(); n]);
    candidates.extend(extra.iter().filter(|c| c.len() == n).cloned());
    candidates.extend((0..samples).map(|k| sampling::unit_real(&mut sampling::stream(seed, k as u64), n)));
    let values: Vec<f64> = candidates
        .par_iter()
        .map(|c| real_exp_square(c))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    Ok(ExpSquareEstimate {
        n,
        value: values[best],
        witness: candidates[best].clone(),
        samples,
        seed,
    })
}

pub fn estimate_exp_square_constant(n: usize, samples: usize, seed: u64) -> Result<ExpSquareEstimate> {
    estimate_exp_square_constant_with(n, samples, seed, &[])
}

/// Estimates for n = 1..=max_n, each seeded with the previous witness padded
/// by a zero, so the sequence is non-decreasing.
pub fn exp_square_profile(max_n: usize, samples: usize, seed: u64) -> Result<Vec<ExpSquareEstimate>> {
    let mut out: Vec<ExpSquareEstimate> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let extra: Vec<Vec<f64>> = out
            .last()
            .map(|prev| {
                let mut w = prev.witness.clone();
                w.push(0.0);
                vec![w]
            })
            .unwrap_or_default();
        out.push(estimate_exp_square_constant_with(n, samples, seed ^ n as u64, &extra)?);
    }
    Ok(out)
}

/// Solves 2√κ ξ exp(−ξ²/2) = δ for ξ ≥ 1 by safeguarded Newton on [1, 30].
/// Returns 1 when the left side is already below δ at ξ = 1.
pub fn e_inverse(delta: f64, kappa: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(param("delta", delta, "must be positive"));
    }
    if !(kappa > 0.0) {
        return Err(param("kappa", kappa, "must be positive"));
    }
    let c = (2.0 * kappa.sqrt()).ln() - delta.ln();
    let f = |xi: f64| c + xi.ln() - xi * xi / 2.0;
    let df = |xi: f64| 1.0 / xi - xi;
    let (mut lo, mut hi) = (1.0f64, 30.0f64);
    if f(lo) <= 0.0 {
        return Ok(1.0);
    }
    let mut xi = (2.0 * c.max(0.5)).sqrt().clamp(lo, hi);
    for _ in 0..100 {
        let fx = f(xi);
        if fx > 0.0 {
            lo = xi;
        } else {
            hi = xi;
        }
        let mut next = xi - fx / df(xi);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - xi).abs() <= 1e-12 * xi || hi - lo <= 1e-12 * xi {
            return Ok(next);
        }
        xi = next;
    }
    Err(Error::NoConvergence("threshold solve"))
}

/// Λ(p) threshold max(1, (2κ₂^{p/2}κ/δ)^{2/(p−2)}).
pub fn xi_lambda_p(delta: f64, p: f64, kappa2: f64, kappa: f64) -> f64 {
    let ln = (2.0 * kappa / delta).ln() + 0.5 * p * kappa2.ln();
    (2.0 * ln / (p - 2.0)).exp().max(1.0)
}

/// 4^{1/(p−2)} κ₂^{p/(p−2)} κ^{2/(p−2)}.
pub fn c_p(p: f64, kappa2: f64, kappa: f64) -> f64 {
    ((4f64.ln() + p * kappa2.ln() + 2.0 * kappa.ln()) / (p - 2.0)).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformizeReport {
    pub n: usize,
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip)]
    pub g: WalshSeries,
    pub input_norm: f64,
    pub sup_g: f64,
    pub sup_rademacher: f64,
    pub l2_dist: f64,
    pub clipped_l2: f64,
    pub xi: f64,
    pub curve_sup_bound: f64,
    pub kappa_hat: f64,
    pub kappa_instance: f64,
    pub kappa_used: f64,
    pub kappa_raised: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_p: Option<f64>,
    pub l2_budget: f64,
    pub budget_note: &'static str,
    pub interpolation_error: f64,
    pub hard_failure: bool,
    pub exceeds_sup_curve: bool,
    pub sharpness: &'static str,
}

const BUDGET_NOTE_2: &str =
    "re-interpolation by Q at eps=1, s=2: distance at most sqrt(sinh 1)/2 * delta";
const BUDGET_NOTE_P: &str =
    "re-interpolation by Q at eps=1, s=2: distance at most sqrt(sinh 1) * xi^((2-p)/2) * kappa2^(p/2)";
const SHARPNESS: &str = "sharpness of the sup curve is open";

struct Clipped {
    g: WalshSeries,
    sup_g: f64,
    sup_u: f64,
    l2_dist: f64,
    clipped_l2: f64,
    interpolation_error: f64,
}

fn clip_and_reinterpolate(x: &[Complex64], xi: f64) -> Result<Clipped> {
    let u = PointValues::rademacher_sum(x)?;
    let domain = u.domain().clone();
    let (h, phi): (Vec<Complex64>, Vec<Complex64>) = u
        .values()
        .iter()
        .map(|&z| if z.norm() <= xi { (z, Complex64::default()) } else { (Complex64::default(), z) })
        .unzip();
    let h_hat = PointValues::new(domain.clone(), h)?.to_series();
    let phi_pts = PointValues::new(domain, phi)?;
    let clipped_l2 = phi_pts.lp_norm(2.0)?;
    let v = phi_pts.to_series().singleton_coeffs();
    let g = h_hat.add(&q_interpolant(&v, 1.0, 2.0)?.series)?;
    let target = WalshSeries::rademacher_sum(x)?;
    let diff = g.sub(&target)?;
    let l2_dist = diff.ls_norm(2.0)?;
    let interpolation_error = g
        .singleton_coeffs()
        .iter()
        .zip(x)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(Clipped {
        sup_g: g.sup_norm(),
        sup_u: u.sup_norm(),
        g,
        l2_dist,
        clipped_l2,
        interpolation_error,
    })
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(param("delta", delta, "must lie in (0, 1)"));
    }
    Ok(())
}

fn normalized(x: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    DyadicDomain::new(x.len())?;
    let norm = complex_norm(x, 2.0);
    if norm == 0.0 {
        return Ok((x.to_vec(), 0.0));
    }
    Ok((x.iter().map(|z| z / norm).collect(), norm))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    report_base: (usize, f64, Option<f64>),
    norm: f64,
    c: Clipped,
    xi: f64,
    curve_unit: f64,
    kappas: (f64, f64, f64),
    c_p: Option<f64>,
    budget_unit: f64,
    note: &'static str,
) -> UniformizeReport {
    let (n, delta, p) = report_base;
    let scale = if norm == 0.0 { 1.0 } else { norm };
    let (kappa_hat, kappa_instance, kappa_used) = kappas;
    let l2_budget = budget_unit * scale;
    let l2_dist = c.l2_dist * scale;
    let interpolation_error = c.interpolation_error * scale;
    let curve_sup_bound = curve_unit * scale;
    let sup_g = c.sup_g * scale;
    UniformizeReport {
        n,
        delta,
        p,
        g: c.g.scale(Complex64::new(scale, 0.0)),
        input_norm: norm,
        sup_g,
        sup_rademacher: c.sup_u * scale,
        l2_dist,
        clipped_l2: c.clipped_l2 * scale,
        xi: xi * scale,
        curve_sup_bound,
        kappa_hat,
        kappa_instance,
        kappa_used,
        kappa_raised: kappa_instance > kappa_hat,
        c_p,
        l2_budget,
        budget_note: note,
        interpolation_error,
        hard_failure: interpolation_error > 1e-10 * scale.max(1.0)
            || l2_dist > l2_budget * (1.0 + 1e-9) + 1e-15,
        exceeds_sup_curve: sup_g > curve_sup_bound,
        sharpness: SHARPNESS,
    }
}

/// Λ(2) uniformizer. `kappa_hat` is the surrogate for the exp-square
/// constant at this n; the instance's own integral is used if larger.
pub fn uniformize(x: &[Complex64], delta: f64, kappa_hat: f64) -> Result<UniformizeReport> {
    check_delta(delta)?;
    let (unit, norm) = normalized(x)?;
    let kappa_instance = if norm == 0.0 { 1.0 } else { exp_square_integral(&unit)? };
    let kappa_used = kappa_hat.max(kappa_instance);
    let xi = e_inverse(delta, kappa_used)?;
    let clipped = clip_and_reinterpolate(&unit, xi)?;
    let budget = 1f64.sinh().sqrt() / 2.0 * delta;
    Ok(finish(
        (x.len(), delta, None),
        norm,
        clipped,
        xi,
        xi + delta / std::f64::consts::SQRT_2,
        (kappa_hat, kappa_instance, kappa_used),
        None,
        budget,
        BUDGET_NOTE_2,
    ))
}

/// Λ(p) uniformizer, p > 2. `kappa2_hat` defaults to √p, the Khintchin
/// L^p constant for Rademacher sums; the instance's own ‖U‖_p is used if
/// larger.
pub fn uniformize_lambda_p(
    x: &[Complex64],
    delta: f64,
    p: f64,
    kappa2_hat: Option<f64>,
) -> Result<UniformizeReport> {
    check_delta(delta)?;
    if !(p > 2.0) || !p.is_finite() {
        return Err(param("p", p, "must be finite and exceed 2"));
    }
    let (unit, norm) = normalized(x)?;
    let kappa_hat = kappa2_hat.unwrap_or(p.sqrt());
    let kappa_instance = if norm == 0.0 {
        0.0
    } else {
        PointValues::rademacher_sum(&unit)?.lp_norm(p)?
    };
    let kappa2 = kappa_hat.max(kappa_instance);
    let xi = xi_lambda_p(delta, p, kappa2, KHINTCHIN_L1);
    let clipped = clip_and_reinterpolate(&unit, xi)?;
    let cp = c_p(p, kappa2, KHINTCHIN_L1);
    let mass = ((2.0 - p) / 2.0 * xi.ln() + p / 2.0 * kappa2.ln()).exp();
    let budget = 1f64.sinh().sqrt() * mass;
    Ok(finish(
        (x.len(), delta, Some(p)),
        norm,
        clipped,
        xi,
        cp * delta.powf(2.0 / (2.0 - p)) + delta / 2.0,
        (kappa_hat, kappa_instance, kappa2),
        Some(cp),
        budget,
        BUDGET_NOTE_P,
    ))
}
