//! Set cascades, vector cascades and factored ultra-interpolants.
//!
//! Level j+1 of a cascade is indexed by the characters of level j that the
//! level-j interpolant can charge off the Rademacher set: every mask of
//! order ≥ 2 (full variant) or every odd mask of order ≥ 3 (odd variant).
//! Feeding the perturbation coefficients forward and summing the factors
//! with weights i^{j-1} gives a function whose bilinear pairing telescopes
//! to x·y plus a tail that shrinks geometrically in the depth.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dyadic::{complex_norm, real_norm, DyadicDomain, PointValues, WalshSeries, MAX_COORDS};
use crate::error::{Error, Result};
use crate::riesz::{decay_constant, real_interpolant, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadeLevel {
    pub size: usize,
    /// Character mask over the previous level for each index of this level;
    /// empty for the base level.
    pub index_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadePlan {
    pub base: DyadicDomain,
    pub depth: usize,
    pub variant: Variant,
    pub levels: Vec<CascadeLevel>,
    /// True when the level after the last one is empty, so every tail is zero.
    pub terminated: bool,
}

fn next_size(n: usize, variant: Variant) -> usize {
    if n == 0 {
        return 0;
    }
    match variant {
        Variant::Full => (1usize << n) - n - 1,
        Variant::Odd => (1usize << (n - 1)) - n,
    }
}

/// Ascending masks over `n` bits that index the next level.
pub fn next_masks(n: usize, variant: Variant) -> Vec<usize> {
    (0..1usize << n)
        .filter(|&w| {
            let k = w.count_ones();
            match variant {
                Variant::Full => k >= 2,
                Variant::Odd => k >= 3 && k % 2 == 1,
            }
        })
        .collect()
}

pub fn build_cascade_plan(base: &DyadicDomain, depth: usize, variant: Variant) -> Result<CascadePlan> {
    if depth == 0 {
        return Err(Error::Incompatible("cascade depth must be at least 1".into()));
    }
    let mut levels = vec![CascadeLevel {
        size: base.n(),
        index_map: Vec::new(),
    }];
    let mut terminated = false;
    while levels.len() < depth {
        let prev = levels.last().map(|l| l.size).unwrap_or(0);
        let size = next_size(prev, variant);
        if size == 0 {
            terminated = true;
            break;
        }
        if size > MAX_COORDS {
            return Err(Error::LevelCap {
                level: levels.len() + 1,
                size,
                cap: MAX_COORDS,
            });
        }
        levels.push(CascadeLevel {
            size,
            index_map: next_masks(prev, variant),
        });
    }
    if !terminated {
        terminated = next_size(levels.last().map(|l| l.size).unwrap_or(0), variant) == 0;
    }
    Ok(CascadePlan {
        base: base.clone(),
        depth,
        variant,
        levels,
        terminated,
    })
}

impl CascadePlan {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.size).collect()
    }

    fn same_shape(&self, other: &CascadePlan) -> bool {
        self.base.n() == other.base.n()
            && self.variant == other.variant
            && self.depth == other.depth
            && self.sizes() == other.sizes()
    }
}

fn check_kind(kind: Kind, s: f64) -> Result<()> {
    let ok = match kind {
        Kind::Q => (1.0..=2.0).contains(&s),
        Kind::P => s > 2.0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Incompatible(format!(
            "kind {kind:?} is not used at s = {s}; Q covers [1, 2], P covers (2, inf]"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VectorCascade {
    /// x^(1), …, x^(L) for the L levels of the plan.
    pub vectors: Vec<Vec<f64>>,
    /// Interpolant coefficients on each level.
    pub interpolants: Vec<Vec<f64>>,
    /// x^(L+1): perturbation of the last level, in next-level index order.
    pub tail: Vec<f64>,
}

pub fn vector_cascade(x: &[f64], plan: &CascadePlan, kind: Kind, s: f64) -> Result<VectorCascade> {
    check_kind(kind, s)?;
    if x.len() != plan.base.n() {
        return Err(Error::LengthMismatch(x.len(), plan.base.n()));
    }
    let mut vectors = vec![x.to_vec()];
    let mut interpolants = Vec::with_capacity(plan.levels.len());
    let mut tail = Vec::new();
    for j in 0..plan.levels.len() {
        let coeffs = real_interpolant(&vectors[j], kind, 1.0, s)?;
        let next: Vec<f64> = match plan.levels.get(j + 1) {
            Some(level) => level.index_map.iter().map(|&w| coeffs[w]).collect(),
            None => next_masks(plan.levels[j].size, plan.variant)
                .into_iter()
                .map(|w| coeffs[w])
                .collect(),
        };
        interpolants.push(coeffs);
        if j + 1 < plan.levels.len() {
            vectors.push(next);
        } else {
            tail = next;
        }
    }
    Ok(VectorCascade {
        vectors,
        interpolants,
        tail,
    })
}

/// How the factors were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// s = 1: the Rademacher sum itself, exact.
    Rademacher,
    /// s in (1, 2] with Q, or s in (2, ∞) with P, iterated through the cascade.
    Cascade(Kind),
    /// s = ∞: a single P level.
    SingleMeasure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactoredSeries {
    pub plan: CascadePlan,
    pub s: f64,
    pub construction: Construction,
    /// Unweighted g_j; the represented function is Σ_j i^{j-1} g_j.
    #[serde(skip)]
    pub factors: Vec<WalshSeries>,
    /// Coefficients beyond the last factor, x^(L+1) (complex split recombined).
    pub tail: Vec<Complex64>,
    /// ‖Re x‖_s + ‖Im x‖_s.
    pub input_norm: f64,
    pub decay: f64,
    pub certified_depth: usize,
    pub level_bound: f64,
    pub level_bound_label: &'static str,
}

fn recombine(re: Vec<f64>, im: Option<Vec<f64>>) -> Vec<Complex64> {
    match im {
        Some(im) => re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(),
        None => re.into_iter().map(|a| Complex64::new(a, 0.0)).collect(),
    }
}

/// Builds the factored ultra-interpolant of x on the plan at exponent s.
pub fn ultra_interpolant(x: &[Complex64], plan: &CascadePlan, s: f64) -> Result<FactoredSeries> {
    if s.is_nan() || s < 1.0 {
        return Err(crate::error::param("s", s, "must lie in [1, inf]"));
    }
    if x.len() != plan.base.n() {
        return Err(Error::LengthMismatch(x.len(), plan.base.n()));
    }
    let u: Vec<f64> = x.iter().map(|z| z.re).collect();
    let v: Vec<f64> = x.iter().map(|z| z.im).collect();
    let has_im = v.iter().any(|&a| a != 0.0);
    let input_norm = real_norm(&u, s) + real_norm(&v, s);
    let base = plan.base.clone();

    if s == 1.0 {
        return Ok(FactoredSeries {
            plan: plan.clone(),
            s,
            construction: Construction::Rademacher,
            factors: vec![WalshSeries::rademacher_sum(x)?],
            tail: Vec::new(),
            input_norm,
            decay: 0.0,
            certified_depth: plan.levels.len(),
            level_bound: 1.0,
            level_bound_label: "sup of the Rademacher sum is at most the l1 norm",
        });
    }

    let (kind, construction, label, beta) = if s.is_infinite() {
        (
            Kind::P,
            Construction::SingleMeasure,
            "P at eps=1, s=inf: mass at most 2",
            2.0,
        )
    } else if s <= 2.0 {
        (
            Kind::Q,
            Construction::Cascade(Kind::Q),
            "Q at eps=1: sup at most exp(1/2)",
            0.5f64.exp(),
        )
    } else {
        (
            Kind::P,
            Construction::Cascade(Kind::P),
            "P at eps=1: max of mass and l^s at most 2",
            2.0,
        )
    };

    let run_plan = if construction == Construction::SingleMeasure {
        build_cascade_plan(&base, 1, plan.variant)?
    } else {
        plan.clone()
    };
    let cu = vector_cascade(&u, &run_plan, kind, s)?;
    let cv = if has_im {
        Some(vector_cascade(&v, &run_plan, kind, s)?)
    } else {
        None
    };
    let mut factors = Vec::with_capacity(run_plan.levels.len());
    for (j, level) in run_plan.levels.iter().enumerate() {
        let im = cv.as_ref().map(|c| c.interpolants[j].clone());
        let coeffs = recombine(cu.interpolants[j].clone(), im);
        factors.push(WalshSeries::new(DyadicDomain::new(level.size)?, coeffs)?);
    }
    let tail = recombine(cu.tail, cv.map(|c| c.tail));
    let certified_depth = if construction == Construction::SingleMeasure {
        1
    } else {
        plan.depth
    };
    Ok(FactoredSeries {
        plan: plan.clone(),
        s,
        construction,
        factors,
        tail,
        input_norm,
        decay: decay_constant(s),
        certified_depth,
        level_bound: beta,
        level_bound_label: label,
    })
}

impl FactoredSeries {
    /// i^j for the zero-based level j.
    pub fn weight(j: usize) -> Complex64 {
        match j % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn factor_points(&self) -> Vec<PointValues> {
        self.factors.iter().map(|f| f.to_points()).collect()
    }

    /// Σ_j ‖g_j‖_∞, an upper bound for the sup norm on the product group.
    pub fn sup_certificate(&self) -> f64 {
        self.factors.iter().map(|f| f.sup_norm()).sum()
    }

    /// Σ_j of the level norm that matches s: max(sup, ℓ^s) up to s = 2,
    /// max(mass, ℓ^s) beyond.
    pub fn norm_certificate(&self) -> f64 {
        let s = self.s;
        self.factors
            .iter()
            .map(|f| {
                if s <= 2.0 {
                    f.linf_s_norm(s).unwrap_or(f64::NAN)
                } else {
                    f.m_s_norm(s).unwrap_or(f64::NAN)
                }
            })
            .sum()
    }

    /// β/(1 − δ)·‖x‖ for iterated constructions, β·‖x‖ for single-level ones.
    pub fn predicted_bound(&self) -> f64 {
        match self.construction {
            Construction::Cascade(_) => self.level_bound / (1.0 - self.decay) * self.input_norm,
            _ => self.level_bound * self.input_norm,
        }
    }

    /// ℓ^s norm of the whole transform (the factor spectra are disjoint).
    pub fn transform_ls_norm(&self) -> f64 {
        let norms: Vec<f64> = self
            .factors
            .iter()
            .map(|f| complex_norm(f.coeffs(), self.s))
            .collect();
        crate::dyadic::seq_norm(norms, self.s)
    }

    pub fn level_one_singletons(&self) -> Vec<Complex64> {
        self.factors[0].singleton_coeffs()
    }

    /// Value at the product-group point whose level-j component is `points[j]`.
    pub fn evaluate(&self, points: &[usize]) -> Complex64 {
        self.factor_points()
            .iter()
            .zip(points)
            .enumerate()
            .map(|(j, (pv, &om))| Self::weight(j) * pv.values()[om])
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingResult {
    pub value: Complex64,
    pub residual_bound: f64,
    pub effective_depth: usize,
    /// x^(L+1)·y^(L+1) when both tails exist; value − x·y equals ± this.
    pub tail_product: Complex64,
    pub per_level: Vec<Complex64>,
}

/// Bilinear pairing of two factored series built on the same plan.
pub fn pairing(f: &FactoredSeries, g: &FactoredSeries) -> Result<PairingResult> {
    if !f.plan.same_shape(&g.plan) {
        return Err(Error::Incompatible("pairing needs series on the same plan".into()));
    }
    if 1.0 / f.s + 1.0 / g.s < 1.0 - 1e-12 {
        return Err(Error::Incompatible(format!(
            "exponents {} and {} are not dual (need 1/s + 1/t >= 1)",
            f.s, g.s
        )));
    }
    let levels = f.factors.len().min(g.factors.len());
    let mut per_level = Vec::with_capacity(levels);
    let mut value = Complex64::default();
    for j in 0..levels {
        let p = f.factors[j].pairing(&g.factors[j])?;
        let w = FactoredSeries::weight(j) * FactoredSeries::weight(j);
        value += w * p;
        per_level.push(p);
    }
    let depth = f.certified_depth.min(g.certified_depth);
    let residual_bound =
        f.decay.powi(depth as i32) * g.decay.powi(depth as i32) * f.input_norm * g.input_norm;
    let tail_product = if f.factors.len() == g.factors.len() && f.tail.len() == g.tail.len() {
        f.tail.iter().zip(&g.tail).map(|(a, b)| a * b).sum()
    } else {
        Complex64::default()
    };
    Ok(PairingResult {
        value,
        residual_bound,
        effective_depth: depth,
        tail_product,
        per_level,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndpointReport {
    pub l1: f64,
    pub linf: f64,
    pub rademacher_sup: f64,
    pub measure_mass: f64,
    pub lower_one: f64,
    pub upper_four: f64,
    pub pass: bool,
}

/// (2/π)‖x‖₁ ≤ ‖U_Rx‖_∞ ≤ ‖x‖₁ and ‖x‖_∞ ≤ mass(Φ^(∞)x) ≤ 4‖x‖_∞.
pub fn endpoint_bounds(x: &[Complex64]) -> Result<EndpointReport> {
    let plan = build_cascade_plan(&DyadicDomain::new(x.len())?, 1, Variant::Odd)?;
    let l1 = complex_norm(x, 1.0);
    let linf = complex_norm(x, f64::INFINITY);
    let rademacher_sup = ultra_interpolant(x, &plan, 1.0)?.sup_certificate();
    let measure = ultra_interpolant(x, &plan, f64::INFINITY)?;
    let measure_mass = measure.factors[0].m_norm();
    let lower_one = 2.0 / std::f64::consts::PI * l1;
    let upper_four = 4.0 * linf;
    let tol = |a: f64, b: f64| a <= b * (1.0 + 1e-9) + 1e-12;
    let pass = tol(lower_one, rademacher_sup)
        && tol(rademacher_sup, l1)
        && tol(linf, measure_mass)
        && tol(measure_mass, upper_four);
    Ok(EndpointReport {
        l1,
        linf,
        rademacher_sup,
        measure_mass,
        lower_one,
        upper_four,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn domain(n: usize) -> DyadicDomain {
        DyadicDomain::new(n).unwrap()
    }

    #[test]
    fn plan_sizes() {
        let full = build_cascade_plan(&domain(3), 3, Variant::Full).unwrap();
        assert_eq!(full.sizes(), vec![3, 4, 11]);
        let odd = build_cascade_plan(&domain(3), 3, Variant::Odd).unwrap();
        assert_eq!(odd.sizes(), vec![3, 1]);
        assert!(odd.terminated);
        assert_eq!(odd.levels[1].index_map, vec![7]);
        let four = build_cascade_plan(&domain(4), 5, Variant::Odd).unwrap();
        assert_eq!(four.sizes(), vec![4; 5]);
        assert!(!four.terminated);
        assert_eq!(four.levels[1].index_map, vec![7, 11, 13, 14]);
    }

    #[test]
    fn plan_cap_names_level() {
        let err = build_cascade_plan(&domain(5), 3, Variant::Odd).unwrap_err();
        assert_eq!(
            err,
            Error::LevelCap {
                level: 3,
                size: (1 << 10) - 11,
                cap: MAX_COORDS
            }
        );
        assert!(build_cascade_plan(&domain(5), 2, Variant::Odd).is_ok());
        assert!(build_cascade_plan(&domain(3), 0, Variant::Odd).is_err());
    }

    #[test]
    fn vector_cascade_examples() {
        let plan = build_cascade_plan(&domain(3), 2, Variant::Odd).unwrap();
        let e1 = vector_cascade(&[1.0, 0.0, 0.0], &plan, Kind::Q, 2.0).unwrap();
        assert_eq!(e1.vectors[1], vec![0.0]);
        let x = vec![1.0 / 3f64.sqrt(); 3];
        let c = vector_cascade(&x, &plan, Kind::Q, 2.0).unwrap();
        assert_relative_eq!(c.vectors[1][0], -1.0 / (3.0 * 3f64.sqrt()), max_relative = 1e-14);
        assert!(c.tail.is_empty());
        assert!(vector_cascade(&x, &plan, Kind::Q, 3.0).is_err());
        assert!(vector_cascade(&x, &plan, Kind::P, 2.0).is_err());
    }

    #[test]
    fn orthogonal_singletons_pair_to_zero() {
        let plan = build_cascade_plan(&domain(3), 3, Variant::Odd).unwrap();
        let e = |a: usize| -> Vec<Complex64> {
            (0..3).map(|b| Complex64::new(if a == b { 1.0 } else { 0.0 }, 0.0)).collect()
        };
        let f1 = ultra_interpolant(&e(0), &plan, 2.0).unwrap();
        let f2 = ultra_interpolant(&e(1), &plan, 2.0).unwrap();
        assert_eq!(pairing(&f1, &f2).unwrap().value, Complex64::default());
        assert_eq!(pairing(&f1, &f1).unwrap().value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn two_coordinates_are_exact() {
        let plan = build_cascade_plan(&domain(2), 3, Variant::Odd).unwrap();
        let x = [Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.0)];
        let y = [Complex64::new(1.0, 0.0), Complex64::new(0.2, -0.5)];
        let fx = ultra_interpolant(&x, &plan, 2.0).unwrap();
        let fy = ultra_interpolant(&y, &plan, 2.0).unwrap();
        assert_eq!(fx.factors.len(), 1);
        let dot = crate::dyadic::dot(&x, &y).unwrap();
        let res = pairing(&fx, &fy).unwrap();
        assert!((res.value - dot).norm() < 1e-15);
        assert!(res.residual_bound > 0.0);
    }

    #[test]
    fn sup_certificate_example() {
        let plan = build_cascade_plan(&domain(3), 3, Variant::Odd).unwrap();
        let mut rng = sampling::rng(4);
        let x = sampling::to_complex(&sampling::unit_real(&mut rng, 3));
        let f = ultra_interpolant(&x, &plan, 2.0).unwrap();
        let delta = (1f64.sinh() - 1.0).sqrt();
        assert_relative_eq!(f.predicted_bound(), 0.5f64.exp() / (1.0 - delta), max_relative = 1e-12);
        assert!((f.predicted_bound() - 2.8365).abs() < 2e-3);
        assert!(f.sup_certificate() <= f.predicted_bound());
        assert!(f.factors.iter().all(|g| g.coeff(0) == Complex64::default()));
    }

    #[test]
    fn mismatched_plans_and_exponents_rejected() {
        let p3 = build_cascade_plan(&domain(3), 2, Variant::Odd).unwrap();
        let p3f = build_cascade_plan(&domain(3), 2, Variant::Full).unwrap();
        let x = sampling::to_complex(&[0.1, 0.2, 0.3]);
        let a = ultra_interpolant(&x, &p3, 2.0).unwrap();
        let b = ultra_interpolant(&x, &p3f, 2.0).unwrap();
        assert!(pairing(&a, &b).is_err());
        let c = ultra_interpolant(&x, &p3, 3.0).unwrap();
        assert!(pairing(&c, &c).is_err());
    }

    #[test]
    fn endpoint_pair_is_exact() {
        let plan = build_cascade_plan(&domain(5), 2, Variant::Odd).unwrap();
        let mut rng = sampling::rng(12);
        let x = sampling::gaussian_complex(&mut rng, 5);
        let y = sampling::gaussian_complex(&mut rng, 5);
        let f = ultra_interpolant(&x, &plan, 1.0).unwrap();
        let g = ultra_interpolant(&y, &plan, f64::INFINITY).unwrap();
        let res = pairing(&f, &g).unwrap();
        assert_eq!(res.residual_bound, 0.0);
        assert!((res.value - crate::dyadic::dot(&x, &y).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn sidon_example() {
        let rep = endpoint_bounds(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        assert_relative_eq!(rep.rademacher_sup, 2f64.sqrt(), max_relative = 1e-15);
        assert!(rep.pass);
    }

    proptest! {
        #[test]
        fn telescoping_and_decay(seed in any::<u64>(), depth in 1usize..4, complex in any::<bool>(),
                                 s in prop::sample::select(vec![1.5, 2.0, 3.0, 6.0])) {
            let plan = build_cascade_plan(&domain(4), depth, Variant::Odd).unwrap();
            let mut rng = sampling::rng(seed);
            let (x, y) = if complex {
                (sampling::unit_complex(&mut rng, 4), sampling::unit_complex(&mut rng, 4))
            } else {
                (sampling::to_complex(&sampling::unit_real(&mut rng, 4)),
                 sampling::to_complex(&sampling::unit_real(&mut rng, 4)))
            };
            let t = s / (s - 1.0);
            let fx = ultra_interpolant(&x, &plan, s).unwrap();
            let gy = ultra_interpolant(&y, &plan, t).unwrap();
            let res = pairing(&fx, &gy).unwrap();
            let dot = crate::dyadic::dot(&x, &y).unwrap();
            let sign = if depth % 2 == 1 { 1.0 } else { -1.0 };
            prop_assert!((res.value - dot - res.tail_product * sign).norm() < 1e-12);
            prop_assert!((res.value - dot).norm() <= res.residual_bound * (1.0 + 1e-9) + 1e-15);
            for (j, g) in fx.factors.iter().enumerate() {
                prop_assert_eq!(g.coeff(0), Complex64::default());
                if j == 0 {
                    for (a, b) in g.singleton_coeffs().iter().zip(&x) {
                        prop_assert!((a - b).norm() < 1e-12);
                    }
                }
            }
            let u: Vec<f64> = x.iter().map(|z| z.re).collect();
            let kind = if s <= 2.0 { Kind::Q } else { Kind::P };
            let vc = vector_cascade(&u, &plan, kind, s).unwrap();
            let delta = decay_constant(s);
            for j in 1..vc.vectors.len() {
                prop_assert!(real_norm(&vc.vectors[j], s)
                    <= delta * real_norm(&vc.vectors[j - 1], s) * (1.0 + 1e-9) + 1e-15);
            }
        }
    }
}
