//! Norms of bilinear forms: scalar (sign or phase) suprema, their
//! vector-valued counterparts on Euclidean unit spheres, mixed ℓ^{s,t}
//! norms, Rademacher moments and the L¹ Khintchin constant.
//!
//! Exact enumerations and multi-start searches run in parallel over fixed
//! chunks, then reduce serially with a lowest-index tie-break, so reported
//! values do not depend on the thread count.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{complex_norm, seq_norm, PointValues};
use crate::error::{param, Error, Result};
use crate::sampling;

/// Largest side enumerated exactly.
pub const EXACT_SIGN_CAP: usize = 24;
const CHUNK_BITS: u32 = 12;
const ASCENT_TOL: f64 = 1e-12;
const ASCENT_ROUNDS: usize = 10_000;
const GRID_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Real,
    Complex,
}

/// A rows × cols complex array, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorInstance {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TensorInstance {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::Parse("matrix must have at least one entry".into()));
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::LengthMismatch(bad.len(), c));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| sampling::to_complex(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, u: usize, v: usize) -> Complex64 {
        self.data[u * self.cols + v]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for v in 0..self.cols {
            for u in 0..self.rows {
                data.push(self.get(u, v));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    fn real_part(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Signs { s: Vec<i8>, t: Vec<i8> },
    Phases { s: Vec<Complex64>, t: Vec<Complex64> },
    Vectors { x: Vec<Vec<Complex64>>, y: Vec<Vec<Complex64>> },
    QuadraticSigns { s: Vec<i8> },
    QuadraticVectors { x: Vec<Vec<Complex64>> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormCertificate {
    pub value: f64,
    pub kind: CertKind,
    pub witness: Witness,
    pub restarts_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn signs_to_complex(s: &[i8]) -> Vec<Complex64> {
    s.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect()
}

/// |Σ a_uv s_u t_v| for scalar witnesses.
pub fn evaluate_scalar(a: &TensorInstance, s: &[Complex64], t: &[Complex64]) -> f64 {
    let mut acc = Complex64::default();
    for u in 0..a.rows {
        for v in 0..a.cols {
            acc += a.get(u, v) * s[u] * t[v];
        }
    }
    acc.norm()
}

fn bdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(p, q)| p * q).sum()
}

/// |Σ a_uv ⟨x_u, y_v⟩| with the bilinear (unconjugated) inner product.
pub fn evaluate_vectors(a: &TensorInstance, x: &[Vec<Complex64>], y: &[Vec<Complex64>]) -> f64 {
    let mut acc = Complex64::default();
    for u in 0..a.rows {
        for v in 0..a.cols {
            acc += a.get(u, v) * bdot(&x[u], &y[v]);
        }
    }
    acc.norm()
}

/// Max over t ∈ {±1}^k of |Σ t_v c_v|, exact. Returns the value and the
/// signs. For real c this is Σ|c_v| with sign(0) = +1.
fn best_sign_sum(c: &[Complex64]) -> (f64, Vec<i8>) {
    let sign = |r: f64| if r < 0.0 { -1i8 } else { 1i8 };
    if c.iter().all(|z| z.im == 0.0) {
        let t: Vec<i8> = c.iter().map(|z| sign(z.re)).collect();
        return (c.iter().map(|z| z.re.abs()).sum(), t);
    }
    // The optimal pattern is sign(Re(e^{-iθ} c_v)) for some θ; one pattern
    // per arc between the breakpoints where some Re(e^{-iθ} c_v) vanishes.
    let pi = std::f64::consts::PI;
    let mut breaks: Vec<f64> = c
        .iter()
        .filter(|z| z.norm() > 0.0)
        .map(|z| (z.arg() + pi / 2.0).rem_euclid(pi))
        .collect();
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup();
    if breaks.is_empty() {
        return (0.0, vec![1; c.len()]);
    }
    let mut best = (-1.0, Vec::new());
    for k in 0..breaks.len() {
        let lo = breaks[k];
        let hi = if k + 1 < breaks.len() { breaks[k + 1] } else { breaks[0] + pi };
        let mid = 0.5 * (lo + hi);
        let rot = Complex64::from_polar(1.0, -mid);
        let t: Vec<i8> = c.iter().map(|z| sign((rot * z).re)).collect();
        let val = c
            .iter()
            .zip(&t)
            .map(|(z, &s)| z * s as f64)
            .sum::<Complex64>()
            .norm();
        if val > best.0 {
            best = (val, t);
        }
    }
    best
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Exact sup over s ∈ {±1}^rows, t ∈ {±1}^cols of |Σ a s t| by Gray-code
/// enumeration of the smaller side (its first sign fixed). Works for
/// complex a as well; the inner maximum over t is solved exactly.
pub fn injective_norm_real(a: &TensorInstance) -> Result<NormCertificate> {
    let transposed = a.rows > a.cols;
    let b = if transposed { a.transpose() } else { a.clone() };
    let r = b.rows;
    if r > EXACT_SIGN_CAP {
        return Err(Error::Incompatible(format!(
            "smaller side {r} exceeds the exact enumeration cap {EXACT_SIGN_CAP}; use injective_norm_real_heuristic"
        )));
    }
    let total = 1usize << (r - 1);
    let chunk = 1usize << CHUNK_BITS.min((r - 1) as u32);
    let chunks = total / chunk;
    let real = b.is_real();
    let br = b.real_part();
    let c = b.cols;

    let results: Vec<(f64, usize)> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let g0 = gray(start);
            let sign_of = |g: usize, u: usize| -> f64 {
                if u > 0 && (g >> (u - 1)) & 1 == 1 {
                    -1.0
                } else {
                    1.0
                }
            };
            let mut best = (-1.0, start);
            if real {
                let mut col = vec![0.0f64; c];
                for u in 0..r {
                    let su = sign_of(g0, u);
                    for v in 0..c {
                        col[v] += br[u * c + v] * su;
                    }
                }
                let mut g = g0;
                for i in start..start + chunk {
                    let val: f64 = col.iter().map(|x| x.abs()).sum();
                    if val > best.0 {
                        best = (val, i);
                    }
                    if i + 1 < start + chunk {
                        let bit = (i + 1).trailing_zeros() as usize;
                        let u = bit + 1;
                        let old = sign_of(g, u);
                        g ^= 1 << bit;
                        for v in 0..c {
                            col[v] -= 2.0 * old * br[u * c + v];
                        }
                    }
                }
            } else {
                for i in start..start + chunk {
                    let g = gray(i);
                    let col: Vec<Complex64> = (0..c)
                        .map(|v| (0..r).map(|u| b.get(u, v) * sign_of(g, u)).sum())
                        .collect();
                    let (val, _) = best_sign_sum(&col);
                    if val > best.0 {
                        best = (val, i);
                    }
                }
            }
            best
        })
        .collect();

    let mut best = results[0];
    for &cand in &results[1..] {
        if cand.0 > best.0 {
            best = cand;
        }
    }
    let g = gray(best.1);
    let s: Vec<i8> = (0..r)
        .map(|u| if u > 0 && (g >> (u - 1)) & 1 == 1 { -1 } else { 1 })
        .collect();
    let col: Vec<Complex64> = (0..c)
        .map(|v| (0..r).map(|u| b.get(u, v) * s[u] as f64).sum())
        .collect();
    let (_, t) = best_sign_sum(&col);
    let (s, t) = if transposed { (t, s) } else { (s, t) };
    let value = evaluate_scalar(a, &signs_to_complex(&s), &signs_to_complex(&t));
    Ok(NormCertificate {
        value,
        kind: CertKind::Exact,
        witness: Witness::Signs { s, t },
        restarts_used: 0,
        seed: None,
        note: None,
    })
}

/// Alternating sign ascent from seeded random starts; a lower bound for
/// sizes beyond the enumeration cap.
pub fn injective_norm_real_heuristic(a: &TensorInstance, restarts: usize, seed: u64) -> NormCertificate {
    let restarts = restarts.max(1);
    let runs: Vec<(f64, Vec<i8>, Vec<i8>)> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = sampling::stream(seed, k as u64);
            let mut s: Vec<i8> = (0..a.rows)
                .map(|_| if sampling::uniform(&mut rng, 0.0, 1.0) < 0.5 { -1 } else { 1 })
                .collect();
            let mut last = -1.0;
            loop {
                let col: Vec<Complex64> = (0..a.cols)
                    .map(|v| (0..a.rows).map(|u| a.get(u, v) * s[u] as f64).sum())
                    .collect();
                let (_, t) = best_sign_sum(&col);
                let row: Vec<Complex64> = (0..a.rows)
                    .map(|u| (0..a.cols).map(|v| a.get(u, v) * t[v] as f64).sum())
                    .collect();
                let (val, s_new) = best_sign_sum(&row);
                if val <= last * (1.0 + 1e-15) {
                    return (val, s, t);
                }
                last = val;
                s = s_new;
            }
        })
        .collect();
    let best = argmax(&runs, |r| r.0);
    let (_, s, t) = runs[best].clone();
    NormCertificate {
        value: evaluate_scalar(a, &signs_to_complex(&s), &signs_to_complex(&t)),
        kind: CertKind::LowerBound,
        witness: Witness::Signs { s, t },
        restarts_used: restarts,
        seed: Some(seed),
        note: None,
    }
}

fn argmax<T>(items: &[T], key: impl Fn(&T) -> f64) -> usize {
    let mut best = 0;
    for k in 1..items.len() {
        if key(&items[k]) > key(&items[best]) {
            best = k;
        }
    }
    best
}

/// Exact certificate when the smaller side is within the cap, heuristic otherwise.
pub fn real_sign_norm(a: &TensorInstance, restarts: usize, seed: u64) -> NormCertificate {
    injective_norm_real(a).unwrap_or_else(|_| injective_norm_real_heuristic(a, restarts, seed))
}

fn unit_phase(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z.conj() / n
    }
}

fn phase_ascent(a: &TensorInstance, mut s: Vec<Complex64>) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let mut last = -1.0;
    let mut t = vec![Complex64::new(1.0, 0.0); a.cols];
    for _ in 0..ASCENT_ROUNDS {
        let col: Vec<Complex64> = (0..a.cols)
            .map(|v| (0..a.rows).map(|u| a.get(u, v) * s[u]).sum())
            .collect();
        t = col.iter().map(|&z| unit_phase(z)).collect();
        let row: Vec<Complex64> = (0..a.rows)
            .map(|u| (0..a.cols).map(|v| a.get(u, v) * t[v]).sum())
            .collect();
        let val: f64 = row.iter().map(|z| z.norm()).sum();
        s = row.iter().map(|&z| unit_phase(z)).collect();
        if val - last <= ASCENT_TOL * val.max(1.0) {
            last = last.max(val);
            break;
        }
        last = val;
    }
    (last, s, t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexNormReport {
    pub certificate: NormCertificate,
    pub real: NormCertificate,
    /// complex / real, at most π²/4 for the true values.
    pub ratio: f64,
    pub sandwich_ok: bool,
}

fn grid_starts(r: usize, points: usize) -> Vec<Vec<Complex64>> {
    let free = r.saturating_sub(1);
    let count = points.pow(free as u32);
    (0..count)
        .map(|mut k| {
            let mut s = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..free {
                let angle = 2.0 * std::f64::consts::PI * (k % points) as f64 / points as f64;
                s.push(Complex64::from_polar(1.0, angle));
                k /= points;
            }
            s
        })
        .collect()
}

/// Lower bound for the sup over unimodular s, t of |Σ a s t| by alternating
/// phase maximization. Starts: a 64-point phase grid per row for ≤ 3 rows,
/// quarter phases for ≤ 6 rows, the exact real sign witness, and `restarts`
/// seeded random phases.
pub fn injective_norm_complex(a: &TensorInstance, restarts: usize, seed: u64) -> ComplexNormReport {
    let real = real_sign_norm(a, restarts.max(1), seed);
    let mut starts = if a.rows <= 3 {
        grid_starts(a.rows, 64)
    } else if a.rows <= 6 {
        grid_starts(a.rows, 4)
    } else {
        Vec::new()
    };
    if let Witness::Signs { s, .. } = &real.witness {
        starts.push(signs_to_complex(s));
    }
    for k in 0..restarts {
        let mut rng = sampling::stream(seed, k as u64);
        starts.push(
            (0..a.rows)
                .map(|_| Complex64::from_polar(1.0, sampling::uniform(&mut rng, 0.0, std::f64::consts::TAU)))
                .collect(),
        );
    }
    let runs: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> =
        starts.par_iter().map(|s0| phase_ascent(a, s0.clone())).collect();
    let best = argmax(&runs, |r| r.0);
    let (_, s, t) = runs[best].clone();
    let value = evaluate_scalar(a, &s, &t).max(real.value);
    let certificate = NormCertificate {
        value,
        kind: if a.rows == 1 || a.cols == 1 { CertKind::Exact } else { CertKind::LowerBound },
        witness: Witness::Phases { s, t },
        restarts_used: starts.len(),
        seed: Some(seed),
        note: None,
    };
    let ratio = if real.value > 0.0 { value / real.value } else { 1.0 };
    let bound = std::f64::consts::PI.powi(2) / 4.0;
    ComplexNormReport {
        sandwich_ok: value >= real.value * (1.0 - 1e-12) && ratio <= bound * (1.0 + 1e-9),
        certificate,
        real,
        ratio,
    }
}

fn normalize_vec(mut v: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n == 0.0 {
        return None;
    }
    for z in &mut v {
        *z = z.conj() / n;
    }
    Some(v)
}

fn combine_rows(a: &TensorInstance, y: &[Vec<Complex64>], dim: usize, transpose: bool) -> Vec<Vec<Complex64>> {
    let (outer, inner) = if transpose { (a.cols, a.rows) } else { (a.rows, a.cols) };
    (0..outer)
        .map(|p| {
            let mut acc = vec![Complex64::default(); dim];
            for q in 0..inner {
                let coef = if transpose { a.get(q, p) } else { a.get(p, q) };
                for (slot, val) in acc.iter_mut().zip(&y[q]) {
                    *slot += coef * val;
                }
            }
            acc
        })
        .collect()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Runs alternating maximization from the column vectors `y` and returns the
/// objective after every half-step along with the final vectors.
pub fn vector_ascent(
    a: &TensorInstance,
    mut y: Vec<Vec<Complex64>>,
    max_rounds: usize,
) -> (Vec<f64>, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let dim = y.first().map(|v| v.len()).unwrap_or(1);
    let mut x: Vec<Vec<Complex64>> = vec![unit_e1(dim); a.rows];
    let mut trace = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for _ in 0..max_rounds {
        let c = combine_rows(a, &y, dim, false);
        trace.push(c.iter().map(|v| vec_norm(v)).sum());
        for (xu, cu) in x.iter_mut().zip(c) {
            if let Some(v) = normalize_vec(cu) {
                *xu = v;
            }
        }
        let d = combine_rows(a, &x, dim, true);
        let val: f64 = d.iter().map(|v| vec_norm(v)).sum();
        trace.push(val);
        for (yv, dv) in y.iter_mut().zip(d) {
            if let Some(v) = normalize_vec(dv) {
                *yv = v;
            }
        }
        if val - last <= ASCENT_TOL * val.abs().max(1.0) {
            break;
        }
        last = val;
    }
    (trace, x, y)
}

fn unit_e1(dim: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::default(); dim];
    v[0] = Complex64::new(1.0, 0.0);
    v
}

fn random_unit(rng: &mut sampling::SeededRng, dim: usize, mode: FieldMode) -> Vec<Complex64> {
    match mode {
        FieldMode::Real => sampling::to_complex(&sampling::unit_real(rng, dim)),
        FieldMode::Complex => sampling::unit_complex(rng, dim),
    }
}

/// Angular sweep for two row vectors in the plane: x_1 = e_1 and
/// x_2 = (cos θ, sin θ), each column vector solved exactly.
fn two_row_grid(a: &TensorInstance, dim: usize) -> (f64, Vec<Vec<Complex64>>) {
    let steps = (std::f64::consts::PI / GRID_STEP).ceil() as usize;
    let value = |theta: f64| -> f64 {
        (0..a.cols)
            .map(|v| {
                let (p, q) = (a.get(0, v).re, a.get(1, v).re);
                (p * p + q * q + 2.0 * p * q * theta.cos()).max(0.0).sqrt()
            })
            .sum()
    };
    let mut best = (value(0.0), 0.0);
    for k in 1..=steps {
        let theta = k as f64 * GRID_STEP;
        let val = value(theta);
        if val > best.0 {
            best = (val, theta);
        }
    }
    let mut x2 = vec![Complex64::default(); dim];
    x2[0] = Complex64::new(best.1.cos(), 0.0);
    x2[1] = Complex64::new(best.1.sin(), 0.0);
    (best.0, vec![unit_e1(dim), x2])
}

/// Sup of |Σ a_uv ⟨x_u, y_v⟩| over unit vectors in K^dim.
pub fn vector_norm(
    a: &TensorInstance,
    dim: usize,
    mode: FieldMode,
    restarts: usize,
    seed: u64,
) -> Result<NormCertificate> {
    if dim == 0 {
        return Err(param("dim", 0.0, "must be at least 1"));
    }
    if mode == FieldMode::Real && !a.is_real() {
        return Err(Error::Incompatible("real mode needs a real matrix".into()));
    }
    let scalar = real_sign_norm(a, restarts.max(1), seed);
    let mut starts: Vec<Vec<Vec<Complex64>>> = Vec::new();
    if let Witness::Signs { t, .. } = &scalar.witness {
        starts.push(t.iter().map(|&tv| {
            let mut e = unit_e1(dim);
            e[0] *= tv as f64;
            e
        }).collect());
    }
    for k in 0..restarts {
        let mut rng = sampling::stream(seed, k as u64);
        starts.push((0..a.cols).map(|_| random_unit(&mut rng, dim, mode)).collect());
    }
    type Run = (f64, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>);
    let runs: Vec<Run> = starts
        .into_par_iter()
        .map(|y0| {
            let (_, x, y) = vector_ascent(a, y0, ASCENT_ROUNDS);
            (evaluate_vectors(a, &x, &y), x, y)
        })
        .collect();
    let best = argmax(&runs, |r| r.0);
    let (mut value, mut x, mut y) = runs[best].clone();
    let mut kind = CertKind::LowerBound;
    let small = a.rows.min(a.cols);
    let mut notes = Vec::new();
    if mode == FieldMode::Real && small <= 2 {
        if small == 1 || dim == 1 {
            kind = if small == 1 { CertKind::Exact } else { kind };
        } else {
            let (inst, swapped) = if a.rows == 2 { (a.clone(), false) } else { (a.transpose(), true) };
            let (grid_val, rows2) = two_row_grid(&inst, dim);
            if grid_val > value {
                let cols = combine_rows(&inst, &rows2, dim, true)
                    .into_iter()
                    .map(|d| normalize_vec(d).unwrap_or_else(|| unit_e1(dim)))
                    .collect::<Vec<_>>();
                let (xs, ys) = if swapped { (cols, rows2) } else { (rows2, cols) };
                value = evaluate_vectors(a, &xs, &ys);
                x = xs;
                y = ys;
            }
            kind = CertKind::Exact;
            notes.push("angular grid at 1e-4; exact to within 1e-3".to_string());
        }
    }
    if dim > small {
        notes.push(format!("dim {dim} exceeds min side {small}; the value is already attained at dim {small}"));
    }
    Ok(NormCertificate {
        value,
        kind,
        witness: Witness::Vectors { x, y },
        restarts_used: restarts + 1,
        seed: Some(seed),
        note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub ratio: Option<f64>,
    pub vector: NormCertificate,
    pub scalar: NormCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn ratio_of(vector: NormCertificate, scalar: NormCertificate) -> RatioReport {
    let (ratio, note) = if scalar.value > 0.0 {
        (Some(vector.value / scalar.value), None)
    } else {
        (None, Some("scalar norm is zero; ratio undefined".to_string()))
    };
    RatioReport {
        ratio,
        vector,
        scalar,
        note,
    }
}

/// Vector-valued over scalar sup for one bilinear form.
pub fn grothendieck_ratio(
    a: &TensorInstance,
    dim: usize,
    mode: FieldMode,
    restarts: usize,
    seed: u64,
) -> Result<RatioReport> {
    let vector = vector_norm(a, dim, mode, restarts, seed)?;
    let scalar = match mode {
        FieldMode::Real => real_sign_norm(a, restarts.max(1), seed),
        FieldMode::Complex => injective_norm_complex(a, restarts, seed).certificate,
    };
    Ok(ratio_of(vector, scalar))
}

fn symmetric_upper(a: &TensorInstance) -> Result<Vec<Vec<Complex64>>> {
    if a.rows != a.cols {
        return Err(Error::Incompatible("quadratic form needs a square matrix".into()));
    }
    let n = a.rows;
    let mut b = vec![vec![Complex64::default(); n]; n];
    for u in 0..n {
        for v in u + 1..n {
            b[u][v] = a.get(u, v);
            b[v][u] = a.get(u, v);
        }
    }
    Ok(b)
}

fn quad_value(b: &[Vec<Complex64>], x: &[Vec<Complex64>]) -> Complex64 {
    let n = b.len();
    let mut acc = Complex64::default();
    for u in 0..n {
        for v in u + 1..n {
            acc += b[u][v] * bdot(&x[u], &x[v]);
        }
    }
    acc
}

/// Exact max over s ∈ {±1}^n of |Σ_{u<v} a_uv s_u s_v| for real a.
fn quadratic_signs_exact(b: &[Vec<f64>]) -> (f64, Vec<i8>) {
    let n = b.len();
    if n <= 1 {
        return (0.0, vec![1; n]);
    }
    let total = 1usize << (n - 1);
    let chunk = 1usize << CHUNK_BITS.min((n - 1) as u32);
    let sign_of = |g: usize, u: usize| -> f64 {
        if u > 0 && (g >> (u - 1)) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    };
    let results: Vec<(f64, usize)> = (0..total / chunk)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let g = gray(start);
            let s: Vec<f64> = (0..n).map(|u| sign_of(g, u)).collect();
            let mut field: Vec<f64> = (0..n)
                .map(|u| (0..n).map(|v| b[u][v] * s[v]).sum())
                .collect();
            let mut q: f64 = (0..n).map(|u| s[u] * field[u]).sum::<f64>() / 2.0;
            let mut s = s;
            let mut best = (-1.0, start);
            for i in start..start + chunk {
                if q.abs() > best.0 {
                    best = (q.abs(), i);
                }
                if i + 1 < start + chunk {
                    let bit = (i + 1).trailing_zeros() as usize;
                    let k = bit + 1;
                    let old = s[k];
                    q -= 2.0 * old * field[k];
                    for v in 0..n {
                        field[v] -= 2.0 * b[v][k] * old;
                    }
                    s[k] = -old;
                }
            }
            best
        })
        .collect();
    let best = results[argmax(&results, |r| r.0)];
    let g = gray(best.1);
    let s: Vec<i8> = (0..n).map(|u| sign_of(g, u) as i8).collect();
    let sc: Vec<f64> = s.iter().map(|&v| v as f64).collect();
    let mut val = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            val += b[u][v] * sc[u] * sc[v];
        }
    }
    (val.abs(), s)
}

fn quadratic_ascent(b: &[Vec<Complex64>], mut x: Vec<Vec<Complex64>>) -> (f64, Vec<Vec<Complex64>>) {
    let n = b.len();
    let dim = x.first().map(|v| v.len()).unwrap_or(1);
    let mut last = quad_value(b, &x).re;
    for _ in 0..ASCENT_ROUNDS {
        for u in 0..n {
            let mut g = vec![Complex64::default(); dim];
            for v in 0..n {
                if v != u {
                    for (slot, val) in g.iter_mut().zip(&x[v]) {
                        *slot += b[u][v] * val;
                    }
                }
            }
            if let Some(v) = normalize_vec(g) {
                x[u] = v;
            }
        }
        let val = quad_value(b, &x).re;
        if val - last <= ASCENT_TOL * val.abs().max(1.0) {
            last = last.max(val);
            break;
        }
        last = val;
    }
    (last, x)
}

/// Quadratic variant: sup of |Σ_{u<v} a_uv ⟨x_u, x_v⟩| over one family of
/// unit vectors, divided by the same sup over unimodular scalars.
pub fn quadratic_ratio(
    a: &TensorInstance,
    dim: usize,
    mode: FieldMode,
    restarts: usize,
    seed: u64,
) -> Result<RatioReport> {
    if dim == 0 {
        return Err(param("dim", 0.0, "must be at least 1"));
    }
    if mode == FieldMode::Real && !a.is_real() {
        return Err(Error::Incompatible("real mode needs a real matrix".into()));
    }
    let b = symmetric_upper(a)?;
    let n = b.len();

    let scalar = if mode == FieldMode::Real && n <= EXACT_SIGN_CAP {
        let br: Vec<Vec<f64>> = b.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        let (value, s) = quadratic_signs_exact(&br);
        NormCertificate {
            value,
            kind: CertKind::Exact,
            witness: Witness::QuadraticSigns { s },
            restarts_used: 0,
            seed: None,
            note: None,
        }
    } else {
        let one_dim = quadratic_search(&b, 1, mode, restarts, seed, &[]);
        NormCertificate {
            value: one_dim.0,
            kind: CertKind::LowerBound,
            witness: Witness::QuadraticVectors { x: one_dim.1 },
            restarts_used: restarts.max(1),
            seed: Some(seed),
            note: None,
        }
    };
    let embedded: Vec<Vec<Vec<Complex64>>> = match &scalar.witness {
        Witness::QuadraticSigns { s } => vec![s
            .iter()
            .map(|&sv| {
                let mut e = unit_e1(dim);
                e[0] *= sv as f64;
                e
            })
            .collect()],
        _ => Vec::new(),
    };
    let (value, x) = quadratic_search(&b, dim, mode, restarts, seed, &embedded);
    let vector = NormCertificate {
        value,
        kind: CertKind::LowerBound,
        witness: Witness::QuadraticVectors { x },
        restarts_used: restarts + embedded.len(),
        seed: Some(seed),
        note: Some("relation of this ratio to the bilinear constant is open".to_string()),
    };
    Ok(ratio_of(vector, scalar))
}

fn quadratic_search(
    b: &[Vec<Complex64>],
    dim: usize,
    mode: FieldMode,
    restarts: usize,
    seed: u64,
    extra: &[Vec<Vec<Complex64>>],
) -> (f64, Vec<Vec<Complex64>>) {
    let n = b.len();
    let neg: Vec<Vec<Complex64>> = b.iter().map(|r| r.iter().map(|z| -z).collect()).collect();
    let mut jobs: Vec<(bool, Vec<Vec<Complex64>>)> = Vec::new();
    for start in extra {
        jobs.push((false, start.clone()));
        if mode == FieldMode::Real {
            jobs.push((true, start.clone()));
        }
    }
    for k in 0..restarts.max(1) {
        let mut rng = sampling::stream(seed, k as u64);
        let x0: Vec<Vec<Complex64>> = (0..n).map(|_| random_unit(&mut rng, dim, mode)).collect();
        jobs.push((false, x0.clone()));
        if mode == FieldMode::Real {
            jobs.push((true, x0));
        }
    }
    let runs: Vec<(f64, Vec<Vec<Complex64>>)> = jobs
        .into_par_iter()
        .map(|(flip, x0)| {
            let (_, x) = quadratic_ascent(if flip { &neg } else { b }, x0);
            (quad_value(b, &x).norm(), x)
        })
        .collect();
    let best = argmax(&runs, |r| r.0);
    runs[best].clone()
}

/// (Σ_rows (Σ_cols |a|^t)^{s/t})^{1/s}: outer ℓ^s over rows of inner ℓ^t.
pub fn mixed_norm(a: &TensorInstance, s: f64, t: f64) -> Result<f64> {
    for (name, e) in [("s", s), ("t", t)] {
        if e.is_nan() || e < 1.0 {
            return Err(param(name, e, "must lie in [1, inf]"));
        }
    }
    let inner: Vec<f64> = a
        .data
        .chunks(a.cols)
        .map(|row| complex_norm(row, t))
        .collect();
    Ok(seq_norm(inner, s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittlewoodReport {
    pub littlewood: f64,
    pub orlicz: f64,
    pub injective: NormCertificate,
    pub littlewood_ratio: f64,
    pub orlicz_ratio: f64,
    pub chain_ok: bool,
}

/// L = Σ_cols ℓ² of the column, O = ℓ² over rows of row ℓ¹ sums, and the
/// real-sign norm V, with the ratios L/V and O/V.
pub fn littlewood_orlicz_report(a: &TensorInstance, restarts: usize, seed: u64) -> LittlewoodReport {
    let littlewood = mixed_norm(&a.transpose(), 1.0, 2.0).unwrap_or(f64::NAN);
    let orlicz = mixed_norm(a, 2.0, 1.0).unwrap_or(f64::NAN);
    let injective = real_sign_norm(a, restarts.max(1), seed);
    let v = injective.value;
    LittlewoodReport {
        littlewood,
        orlicz,
        littlewood_ratio: littlewood / v,
        orlicz_ratio: orlicz / v,
        chain_ok: orlicz <= littlewood * (1.0 + 1e-12),
        injective,
    }
}

/// (E|Σ x_α r_α|^p)^{1/p} by enumerating all 2^n sign patterns.
pub fn khintchin_lp(x: &[Complex64], p: f64) -> Result<f64> {
    PointValues::rademacher_sum(x)?.lp_norm(p)
}

/// ‖x‖₁ / ‖Σ x_α r_α‖_∞.
pub fn sidon_ratio(x: &[Complex64]) -> Result<f64> {
    let l1 = complex_norm(x, 1.0);
    if l1 == 0.0 {
        return Err(Error::Incompatible("sidon ratio of the zero vector".into()));
    }
    Ok(l1 / PointValues::rademacher_sum(x)?.sup_norm())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaEstimate {
    pub n: usize,
    pub kappa: f64,
    pub min_l1: f64,
    pub witness: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
}

/// E|⟨x, ω⟩| over half the sign patterns (ω_0 = +1), which is the full mean.
fn l1_mean(x: &[f64], omegas: &[Vec<f64>]) -> f64 {
    omegas
        .iter()
        .map(|w| w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs())
        .sum::<f64>()
        / omegas.len() as f64
}

fn half_patterns(n: usize) -> Vec<Vec<f64>> {
    (0..1usize << (n - 1))
        .map(|m| {
            (0..n)
                .map(|a| if a > 0 && (m >> (a - 1)) & 1 == 1 { -1.0 } else { 1.0 })
                .collect()
        })
        .collect()
}

fn normalize_real(v: &mut [f64]) {
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if n > 0.0 {
        for a in v.iter_mut() {
            *a /= n;
        }
    }
}

fn descend(x0: Vec<f64>, omegas: &[Vec<f64>], steps: usize) -> Vec<f64> {
    let n = x0.len();
    let mut x = x0;
    let mut best = (l1_mean(&x, omegas), x.clone());
    for k in 0..steps {
        let mut g = vec![0.0; n];
        for w in omegas {
            let ip: f64 = w.iter().zip(&x).map(|(a, b)| a * b).sum();
            let sg = if ip > 0.0 { 1.0 } else if ip < 0.0 { -1.0 } else { 0.0 };
            for (gi, wi) in g.iter_mut().zip(w) {
                *gi += sg * wi;
            }
        }
        let inv = 1.0 / omegas.len() as f64;
        let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() * inv;
        let eta = 0.3 / ((k + 1) as f64).sqrt();
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi -= eta * (gi * inv - radial * *xi);
        }
        normalize_real(&mut x);
        let val = l1_mean(&x, omegas);
        if val < best.0 {
            best = (val, x.clone());
        }
    }
    best.1
}

/// Moves x to the nearest vertex of the sign-hyperplane arrangement: the
/// unit null vector of n−1 independent, nearly orthogonal sign patterns.
fn snap_to_vertex(x: &[f64], omegas: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = x.len();
    let mut order: Vec<usize> = (0..omegas.len()).collect();
    let ip = |w: &Vec<f64>| w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs();
    order.sort_by(|&i, &j| ip(&omegas[i]).total_cmp(&ip(&omegas[j])).then(i.cmp(&j)));
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for &i in &order {
        if chosen.len() == n - 1 {
            break;
        }
        let mut r = omegas[i].clone();
        for b in &basis {
            let c: f64 = r.iter().zip(b).map(|(p, q)| p * q).sum();
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        let norm = r.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(r.iter().map(|a| a / norm).collect());
            chosen.push(i);
        }
    }
    if chosen.len() != n - 1 {
        return None;
    }
    let m = DMatrix::from_fn(n, n, |i, j| chosen.iter().map(|&c| omegas[c][i] * omegas[c][j]).sum::<f64>());
    let eig = SymmetricEigen::new(m);
    let k = (0..n).fold(0, |b, k| if eig.eigenvalues[k] < eig.eigenvalues[b] { k } else { b });
    let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
    normalize_real(&mut v);
    let align: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
    if align < 0.0 {
        for a in v.iter_mut() {
            *a = -*a;
        }
    }
    Some(v)
}

/// 1 / min over the real unit sphere of E|Σ x_α r_α|, by multi-start
/// projected subgradient descent followed by a vertex snap. The estimate at
/// n also starts from the zero-padded best point at n − 1.
pub fn kappa_estimate(n: usize, seed: u64) -> Result<KappaEstimate> {
    kappa_estimate_with(n, seed, 24)
}

pub fn kappa_estimate_with(n: usize, seed: u64, restarts: usize) -> Result<KappaEstimate> {
    if n == 0 {
        return Err(param("n", 0.0, "must be at least 1"));
    }
    if n > crate::dyadic::MAX_COORDS {
        return Err(Error::SizeCap {
            n,
            cap: crate::dyadic::MAX_COORDS,
        });
    }
    let mut carry: Vec<f64> = vec![1.0];
    let mut min_l1 = 1.0;
    for m in 2..=n {
        let omegas = half_patterns(m);
        let mut starts: Vec<Vec<f64>> = Vec::with_capacity(restarts + 1);
        let mut padded = carry.clone();
        padded.push(0.0);
        starts.push(padded);
        for k in 0..restarts {
            starts.push(sampling::unit_real(&mut sampling::stream(seed ^ m as u64, k as u64), m));
        }
        let runs: Vec<(f64, Vec<f64>)> = starts
            .into_par_iter()
            .enumerate()
            .map(|(k, x0)| {
                let x = if k == 0 { x0 } else { descend(x0, &omegas, 600) };
                let mut best = (l1_mean(&x, &omegas), x.clone());
                if let Some(v) = snap_to_vertex(&x, &omegas) {
                    let val = l1_mean(&v, &omegas);
                    if val < best.0 {
                        best = (val, v);
                    }
                }
                best
            })
            .collect();
        let mut best = 0;
        for k in 1..runs.len() {
            if runs[k].0 < runs[best].0 {
                best = k;
            }
        }
        min_l1 = runs[best].0;
        carry = runs[best].1.clone();
    }
    Ok(KappaEstimate {
        n,
        kappa: 1.0 / min_l1,
        min_l1,
        witness: carry,
        restarts,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn real(rows: &[&[f64]]) -> TensorInstance {
        TensorInstance::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn hadamard() -> TensorInstance {
        real(&[&[1.0, 1.0], &[1.0, -1.0]])
    }

    fn random_real(rng: &mut sampling::SeededRng, r: usize, c: usize) -> TensorInstance {
        TensorInstance::from_real_rows(&(0..r).map(|_| sampling::gaussian(rng, c)).collect::<Vec<_>>()).unwrap()
    }

    // Both sides enumerated: 2^r · 2^c sign pairs.
    fn double_enumeration(a: &TensorInstance) -> f64 {
        let mut best: f64 = 0.0;
        for ms in 0..1usize << a.rows() {
            for mt in 0..1usize << a.cols() {
                let s: Vec<Complex64> = (0..a.rows())
                    .map(|u| Complex64::new(if ms >> u & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
                    .collect();
                let t: Vec<Complex64> = (0..a.cols())
                    .map(|v| Complex64::new(if mt >> v & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
                    .collect();
                best = best.max(evaluate_scalar(a, &s, &t));
            }
        }
        best
    }

    #[test]
    fn real_norm_examples() {
        let id = real(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(injective_norm_real(&id).unwrap().value, 2.0);
        let h = injective_norm_real(&hadamard()).unwrap();
        assert_eq!(h.value, 2.0);
        assert_eq!(h.kind, CertKind::Exact);
    }

    #[test]
    fn real_norm_matches_double_enumeration() {
        let mut rng = sampling::rng(31);
        for (r, c) in [(3, 3), (2, 5), (5, 2), (4, 4)] {
            let a = random_real(&mut rng, r, c);
            assert_relative_eq!(injective_norm_real(&a).unwrap().value, double_enumeration(&a), max_relative = 1e-12);
        }
        let z = TensorInstance::from_rows(vec![
            vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.3), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.2, 0.1), Complex64::new(1.5, -0.7), Complex64::new(0.4, 0.4)],
        ])
        .unwrap();
        assert_relative_eq!(injective_norm_real(&z).unwrap().value, double_enumeration(&z), max_relative = 1e-12);
    }

    #[test]
    fn chunked_enumeration_matches_oracle_past_one_chunk() {
        let mut rng = sampling::rng(5);
        let a = random_real(&mut rng, 14, 3);
        let exact = injective_norm_real(&a).unwrap();
        let t = a.transpose();
        assert_relative_eq!(exact.value, double_enumeration(&t), max_relative = 1e-12);
    }

    #[test]
    fn heuristic_is_a_lower_bound() {
        let mut rng = sampling::rng(6);
        let a = random_real(&mut rng, 6, 6);
        let h = injective_norm_real_heuristic(&a, 8, 1);
        assert!(h.value <= injective_norm_real(&a).unwrap().value * (1.0 + 1e-12));
    }

    #[test]
    fn complex_norm_examples() {
        let d = TensorInstance::from_rows(vec![
            vec![Complex64::new(0.0, 2.0), Complex64::default()],
            vec![Complex64::default(), Complex64::new(-1.0, 1.0)],
        ])
        .unwrap();
        let rep = injective_norm_complex(&d, 4, 1);
        assert_relative_eq!(rep.certificate.value, 2.0 + 2f64.sqrt(), max_relative = 1e-12);
        let rep = injective_norm_complex(&hadamard(), 4, 1);
        assert!(rep.certificate.value >= 2.0);
        assert!(rep.sandwich_ok);
    }

    #[test]
    fn vector_norm_examples() {
        let id = real(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_relative_eq!(vector_norm(&id, 2, FieldMode::Real, 4, 1).unwrap().value, 2.0, max_relative = 1e-9);
        let h = vector_norm(&hadamard(), 2, FieldMode::Real, 4, 1).unwrap();
        assert!(h.value >= 2.0 * 2f64.sqrt() - 1e-6);
        assert_eq!(h.kind, CertKind::Exact);
        if let Witness::Vectors { x, y } = &h.witness {
            assert_relative_eq!(evaluate_vectors(&hadamard(), x, y), h.value, max_relative = 1e-9);
        } else {
            panic!("wrong witness");
        }
        let r = vector_norm(&hadamard(), 1, FieldMode::Real, 4, 1).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn hadamard_grid_oracle() {
        // Dense sweep over both angles of the two row vectors.
        let mut best: f64 = 0.0;
        let steps = 2000;
        for i in 0..steps {
            for j in 0..steps {
                let (a, b) = (i as f64 * std::f64::consts::TAU / steps as f64, j as f64 * std::f64::consts::TAU / steps as f64);
                let x1 = (a.cos(), a.sin());
                let x2 = (b.cos(), b.sin());
                let c1 = ((x1.0 + x2.0).powi(2) + (x1.1 + x2.1).powi(2)).sqrt();
                let c2 = ((x1.0 - x2.0).powi(2) + (x1.1 - x2.1).powi(2)).sqrt();
                best = best.max(c1 + c2);
            }
        }
        let h = vector_norm(&hadamard(), 2, FieldMode::Real, 4, 1).unwrap();
        assert!((h.value - best).abs() < 1e-3);
    }

    #[test]
    fn ratio_examples() {
        let rep = grothendieck_ratio(&hadamard(), 2, FieldMode::Real, 8, 3).unwrap();
        assert_relative_eq!(rep.ratio.unwrap(), 2f64.sqrt(), max_relative = 1e-6);
        let rank_one = real(&[&[1.0, -2.0, 0.5], &[2.0, -4.0, 1.0], &[-0.5, 1.0, -0.25]]);
        let rep = grothendieck_ratio(&rank_one, 3, FieldMode::Real, 8, 3).unwrap();
        assert_relative_eq!(rep.ratio.unwrap(), 1.0, max_relative = 1e-9);
        let zero = real(&[&[0.0, 0.0], &[0.0, 0.0]]);
        assert!(grothendieck_ratio(&zero, 2, FieldMode::Real, 2, 3).unwrap().ratio.is_none());
    }

    #[test]
    fn quadratic_ratio_examples() {
        let mut rng = sampling::rng(44);
        let g = random_real(&mut rng, 5, 5);
        let rep = quadratic_ratio(&g, 5, FieldMode::Real, 8, 2).unwrap();
        assert!(rep.ratio.unwrap() >= 1.0 - 1e-9);
        // Triangle with all −1 couplings: the ±1 best is 1, unit vectors at
        // 120° reach 3/2.
        let tri = real(&[&[0.0, -1.0, -1.0], &[0.0, 0.0, -1.0], &[0.0, 0.0, 0.0]]);
        let rep = quadratic_ratio(&tri, 2, FieldMode::Real, 8, 2).unwrap();
        assert_relative_eq!(rep.scalar.value, 3.0, max_relative = 1e-12);
        let rep_vec = rep.vector.value;
        assert!(rep_vec >= 3.0 - 1e-9);
        assert!(quadratic_ratio(&hadamard().transpose(), 1, FieldMode::Real, 1, 1).is_ok());
        assert!(quadratic_ratio(&real(&[&[1.0, 2.0]]), 1, FieldMode::Real, 1, 1).is_err());
    }

    #[test]
    fn quadratic_exact_matches_brute_force() {
        let mut rng = sampling::rng(8);
        let a = random_real(&mut rng, 7, 7);
        let b = symmetric_upper(&a).unwrap();
        let br: Vec<Vec<f64>> = b.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        let mut best: f64 = 0.0;
        for m in 0..1usize << 7 {
            let s: Vec<f64> = (0..7).map(|u| if m >> u & 1 == 1 { -1.0 } else { 1.0 }).collect();
            let mut q = 0.0;
            for u in 0..7 {
                for v in u + 1..7 {
                    q += br[u][v] * s[u] * s[v];
                }
            }
            best = best.max(q.abs());
        }
        assert_relative_eq!(quadratic_signs_exact(&br).0, best, max_relative = 1e-12);
    }

    #[test]
    fn mixed_norm_examples() {
        let h = hadamard();
        let rep = littlewood_orlicz_report(&h, 1, 0);
        assert_relative_eq!(rep.littlewood, 2.0 * 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(rep.injective.value, 2.0);
        assert_relative_eq!(rep.littlewood_ratio, 2f64.sqrt(), max_relative = 1e-15);
        let single = real(&[&[0.0, 0.0], &[0.0, -3.0]]);
        let rep = littlewood_orlicz_report(&single, 1, 0);
        assert_eq!((rep.littlewood, rep.orlicz, rep.injective.value), (3.0, 3.0, 3.0));
        assert!(mixed_norm(&h, 0.5, 1.0).is_err());
        assert_relative_eq!(mixed_norm(&h, 2.0, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn khintchin_examples() {
        let e1 = [Complex64::new(1.0, 0.0), Complex64::default()];
        for p in [1.0, 2.0, 7.0] {
            assert_relative_eq!(khintchin_lp(&e1, p).unwrap(), 1.0);
        }
        let x = [Complex64::new(0.5f64.sqrt(), 0.0); 2];
        assert_relative_eq!(khintchin_lp(&x, 4.0).unwrap(), 2f64.powf(0.25), max_relative = 1e-14);
    }

    #[test]
    fn sidon_examples() {
        assert_eq!(sidon_ratio(&sampling::to_complex(&[0.3, -2.0, 1.0])).unwrap(), 1.0);
        let r = sidon_ratio(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        assert_relative_eq!(r, 2f64.sqrt(), max_relative = 1e-15);
        assert!(sidon_ratio(&[Complex64::default()]).is_err());
    }

    #[test]
    fn kappa_two_matches_angular_grid() {
        let k = kappa_estimate(2, 1).unwrap();
        // Grid oracle over the unit circle at 1e-4.
        let steps = (std::f64::consts::TAU / 1e-4) as usize;
        let mut min = f64::INFINITY;
        for i in 0..steps {
            let t = i as f64 * 1e-4;
            let (a, b) = (t.cos(), t.sin());
            min = min.min(0.5 * ((a + b).abs() + (a - b).abs()));
        }
        // The grid misses the kink by up to half a step, so it only agrees
        // to first order in the step.
        assert!(k.kappa >= 1.0 / min - 1e-12 && k.kappa - 1.0 / min < 1e-4);
        assert!((k.kappa - 2f64.sqrt()).abs() < 1e-6);
        for w in &k.witness {
            assert!((w.abs() - 0.5f64.sqrt()).abs() < 1e-6);
        }
    }

    #[test]
    fn kappa_is_monotone_and_bounded() {
        let mut prev = 1.0;
        for n in 2..=5 {
            let k = kappa_estimate(n, 7).unwrap().kappa;
            assert!(k >= prev - 1e-15 && k <= 2f64.sqrt() + 1e-6, "n={n} k={k}");
            prev = k;
        }
    }

    proptest! {
        #[test]
        fn sandwich_and_homogeneity(seed in any::<u64>(), r in 1usize..5, c in 1usize..5, scale in -3.0f64..3.0) {
            let mut rng = sampling::rng(seed);
            let a = random_real(&mut rng, r, c);
            let exact = injective_norm_real(&a).unwrap();
            let vec = vector_norm(&a, 2, FieldMode::Real, 3, seed).unwrap();
            prop_assert!(vec.value >= exact.value * (1.0 - 1e-12));
            let cplx = injective_norm_complex(&a, 3, seed);
            prop_assert!(cplx.sandwich_ok);
            let scaled = injective_norm_real(&a.scale(Complex64::new(scale, 0.0))).unwrap();
            prop_assert!((scaled.value - scale.abs() * exact.value).abs() <= 1e-12 * (1.0 + exact.value));
            let mixed = mixed_norm(&a, 2.0, 1.0).unwrap();
            let mixed_s = mixed_norm(&a.scale(Complex64::new(scale, 0.0)), 2.0, 1.0).unwrap();
            prop_assert!((mixed_s - scale.abs() * mixed).abs() <= 1e-12 * (1.0 + mixed));
            let rep = littlewood_orlicz_report(&a, 1, seed);
            prop_assert!(rep.chain_ok);
        }

        #[test]
        fn ascent_never_decreases(seed in any::<u64>(), r in 2usize..5, c in 2usize..5, dim in 1usize..4) {
            let mut rng = sampling::rng(seed);
            let a = random_real(&mut rng, r, c);
            let y0: Vec<Vec<Complex64>> = (0..c).map(|_| random_unit(&mut rng, dim, FieldMode::Real)).collect();
            let (trace, x, y) = vector_ascent(&a, y0, 200);
            for w in trace.windows(2) {
                prop_assert!(w[1] >= w[0] * (1.0 - 1e-12) - 1e-12);
            }
            prop_assert!((evaluate_vectors(&a, &x, &y) - trace.last().copied().unwrap()).abs() <= 1e-9 * (1.0 + trace.last().unwrap()));
        }
    }
}
