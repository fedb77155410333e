//! Brute-force and floating-point cross-checks for the exact engines.
//!
//! Points are drawn from rational grids, so membership predicates stay
//! exact; floats only enter where suprema and infima are approximated.

use monolin_core::doublecone::{self, FinGenDoubleCone};
use monolin_core::linsub::{self, FitzForm};
use monolin_core::matrix::{self, Inertia, Mat};
use monolin_core::pairing::{self, Point};
use monolin_core::sampling::{GridSampler, ProbePlan};
use monolin_core::scalar::{self, Scalar};
use monolin_core::{Error as CoreError, Subspace};
use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub seed: u64,
    pub samples: usize,
    pub grid_radius: Scalar,
    pub float_tolerance: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        let plan = ProbePlan::default();
        Self {
            seed: plan.seed,
            samples: plan.samples,
            grid_radius: plan.grid_radius,
            float_tolerance: 1e-9,
        }
    }
}

impl ProbeConfig {
    pub fn plan(&self) -> ProbePlan {
        ProbePlan {
            seed: self.seed,
            samples: self.samples,
            grid_radius: self.grid_radius.clone(),
        }
    }

    pub fn sampler(&self) -> GridSampler {
        GridSampler::new(self.seed, &self.grid_radius)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("point is outside the linear hull, the Penot function is +inf there")]
    Infeasible,
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// A set that can be sampled on the rational grid.
pub trait PointSource {
    fn n(&self) -> usize;
    /// A random member, or `None` when the set is empty.
    fn sample(&self, sampler: &mut GridSampler) -> Option<Point>;
}

impl PointSource for Subspace {
    fn n(&self) -> usize {
        Subspace::n(self)
    }

    fn sample(&self, sampler: &mut GridSampler) -> Option<Point> {
        Some(sampler.point_in(self))
    }
}

impl PointSource for FinGenDoubleCone {
    fn n(&self) -> usize {
        FinGenDoubleCone::n(self)
    }

    fn sample(&self, sampler: &mut GridSampler) -> Option<Point> {
        let lines = self.generators().len();
        let k = sampler.index(lines + 1);
        if k == lines {
            Some(sampler.point_in(self.skew()))
        } else {
            Some(self.generators()[k].point().scale(&sampler.scalar()))
        }
    }
}

/// A finite union of subspaces, such as the two axes `[c = 0]` for `n = 1`.
#[derive(Debug, Clone)]
pub struct Union {
    pub n: usize,
    pub parts: Vec<Subspace>,
}

impl PointSource for Union {
    fn n(&self) -> usize {
        self.n
    }

    fn sample(&self, sampler: &mut GridSampler) -> Option<Point> {
        if self.parts.is_empty() {
            return None;
        }
        let k = sampler.index(self.parts.len());
        Some(sampler.point_in(&self.parts[k]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// No counterexample among this many probes.
    Passed(usize),
    /// Two points with `c(a − b) < 0`.
    Violation(Point, Point),
    /// A point outside the relation that is monotonically related to it.
    NotMaximal(Point),
}

impl ProbeOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ProbeOutcome::Passed(_))
    }
}

/// Checks `c(z − w) ≥ 0` exactly on `cfg.samples` sampled pairs.
pub fn oracle_monotone_pairs<S: PointSource + ?Sized>(source: &S, cfg: &ProbeConfig) -> ProbeOutcome {
    let mut sampler = cfg.sampler();
    for _ in 0..cfg.samples {
        let (Some(z), Some(w)) = (source.sample(&mut sampler), source.sample(&mut sampler)) else {
            return ProbeOutcome::Passed(cfg.samples);
        };
        if pairing::cval(&z.sub(&w)).is_negative() {
            return ProbeOutcome::Violation(z, w);
        }
    }
    ProbeOutcome::Passed(cfg.samples)
}

/// A float lower bound for `sup_{w∈L} z·w − c(w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitzSup {
    pub lower_bound: f64,
    /// An ascent direction with no curvature was found: the supremum is `+∞`.
    pub unbounded: bool,
}

fn to_dmatrix(m: &Mat) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| scalar::to_f64(&m[(i, j)]))
}

/// Maximizes `f(u) = bᵀu − uᵀgu` (with `b = BᵀJz`, `g` the Gram form):
/// best point of a coefficient grid, then conjugate-gradient ascent from
/// it. Every value reported is `f` at an actual point of `L`, so the bound
/// is one-sided up to rounding.
pub fn oracle_fitz_sup(l: &Subspace, z: &Point, cfg: &ProbeConfig) -> Result<FitzSup, CoreError> {
    if z.n() != l.n() {
        return Err(CoreError::DimensionMismatch {
            expected: l.n(),
            found: z.n(),
        });
    }
    if !linsub::is_monotone(l).monotone {
        return Err(CoreError::NotMonotone);
    }
    let k = l.dim();
    if k == 0 {
        return Ok(FitzSup {
            lower_bound: 0.0,
            unbounded: false,
        });
    }
    let zf = z.to_flat();
    let b = DVector::from_iterator(
        k,
        l.basis().iter().map(|v| scalar::to_f64(&pairing::couple_flat(v, &zf))),
    );
    let g = to_dmatrix(&linsub::gram(l));
    let f = |u: &DVector<f64>| b.dot(u) - u.dot(&(&g * u));

    let mut sampler = cfg.sampler();
    let mut best = DVector::zeros(k);
    let mut best_value = 0.0;
    for _ in 0..cfg.samples.min(2000) {
        let u = DVector::from_iterator(k, sampler.vector(k).iter().map(scalar::to_f64));
        let v = f(&u);
        if v > best_value {
            best_value = v;
            best = u;
        }
    }

    // conjugate gradients on 2g·u = b, which is the ascent system of f
    let scale = g.abs().max().max(1.0);
    let mut u = best;
    let mut r = &b - 2.0 * (&g * &u);
    let mut p = r.clone();
    let mut unbounded = false;
    for _ in 0..4 * k + 4 {
        let rr = r.dot(&r);
        if rr <= (cfg.float_tolerance * (1.0 + b.norm())).powi(2) {
            break;
        }
        let gp = &g * &p;
        let curvature = p.dot(&gp);
        let slope = r.dot(&p);
        if curvature <= 1e-12 * scale * p.dot(&p) {
            if slope > cfg.float_tolerance * (1.0 + b.norm()) * p.norm() {
                unbounded = true;
            }
            break;
        }
        let alpha = rr / (2.0 * curvature);
        u += alpha * &p;
        let r_next = &r - 2.0 * alpha * &gp;
        let beta = r_next.dot(&r_next) / rr;
        p = &r_next + beta * &p;
        r = r_next;
    }
    let value = f(&u).max(best_value);
    Ok(FitzSup {
        lower_bound: if unbounded { f64::INFINITY } else { value },
        unbounded,
    })
}

/// Searches for `z ∉ L` with `z ∈ L⁺`; half of the probes are drawn from
/// `dom φ_L`, where such points must live.
pub fn oracle_maximal_probe(l: &Subspace, cfg: &ProbeConfig) -> Result<ProbeOutcome, CoreError> {
    let form = FitzForm::new(l)?;
    let dom = linsub::fitz_dom(l)?;
    let mut sampler = cfg.sampler();
    for i in 0..cfg.samples {
        let z = if i % 2 == 0 {
            sampler.point_in(&dom)
        } else {
            sampler.point(l.n())
        };
        if !l.contains(&z) && form.in_plus(&z) {
            return Ok(ProbeOutcome::NotMaximal(z));
        }
    }
    Ok(ProbeOutcome::Passed(cfg.samples))
}

/// Float approximation of the Penot function of a cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenotApprox {
    pub value: f64,
    /// `‖Σλⱼwⱼ + s − z‖∞` for the reported convex combination.
    pub residual: f64,
}

/// `ψ_D(z) = inf{Σλⱼc(wⱼ) : Σλⱼwⱼ = z, wⱼ ∈ D, λ ∈ simplex}`.
///
/// Writing `z = s + Σ aⱼzⱼ` with `s` skew, the best weights are
/// `λⱼ ∝ |aⱼ|√c(zⱼ)`, the skew part entering with vanishing weight. The
/// infimum over representations is a linear program in `|aⱼ|`, attained
/// where the used generators are independent modulo the skew part, so
/// those subsets are enumerated.
pub fn oracle_penot_cone(d: &FinGenDoubleCone, z: &Point, cfg: &ProbeConfig) -> Result<PenotApprox, OracleError> {
    if z.n() != d.n() {
        return Err(CoreError::DimensionMismatch {
            expected: d.n(),
            found: z.n(),
        }
        .into());
    }
    if !doublecone::dc_is_monotone(d).monotone {
        return Err(CoreError::NotMonotone.into());
    }
    let gens = d.generators();
    let skew = d.skew().basis();
    let zf = z.to_flat();
    let mut best: Option<Representation> = None;
    for mask in 0u32..(1 << gens.len()) {
        let chosen: Vec<usize> = (0..gens.len()).filter(|j| mask & (1 << j) != 0).collect();
        let mut cols: Vec<Vec<Scalar>> = skew.to_vec();
        cols.extend(chosen.iter().map(|&j| gens[j].point().to_flat()));
        let Some(coeffs) = solve_independent(&cols, &zf) else {
            continue;
        };
        let (s_coeffs, a) = coeffs.split_at(skew.len());
        let gauge: f64 = chosen
            .iter()
            .zip(a)
            .map(|(&j, aj)| scalar::to_f64(&aj.abs()) * scalar::to_f64(gens[j].c()).sqrt())
            .sum();
        let value = gauge * gauge;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Representation {
                value,
                gens: chosen.iter().copied().zip(a.iter().cloned()).collect(),
                skew: s_coeffs.to_vec(),
            });
        }
    }
    let Some(Representation { gens: a, skew: s_coeffs, .. }) = best else {
        return Err(OracleError::Infeasible);
    };

    // evaluate the convex combination literally
    let len = zf.len();
    let weights: Vec<f64> = a
        .iter()
        .map(|(j, aj)| scalar::to_f64(&aj.abs()) * scalar::to_f64(gens[*j].c()).sqrt())
        .collect();
    let total: f64 = weights.iter().sum();
    let mut value = 0.0;
    let mut combo = vec![0.0; len];
    for ((j, aj), w) in a.iter().zip(&weights) {
        if *w == 0.0 {
            continue;
        }
        let lambda = w / total;
        let mu = scalar::to_f64(aj) / lambda;
        let point: Vec<f64> = gens[*j].point().to_flat().iter().map(|v| mu * scalar::to_f64(v)).collect();
        let (x, y) = point.split_at(len / 2);
        value += lambda * x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        for (c, p) in combo.iter_mut().zip(&point) {
            *c += lambda * p;
        }
    }
    for (sc, v) in s_coeffs.iter().zip(skew) {
        for (c, e) in combo.iter_mut().zip(v) {
            *c += scalar::to_f64(sc) * scalar::to_f64(e);
        }
    }
    let residual = combo
        .iter()
        .zip(&zf)
        .map(|(c, e)| (c - scalar::to_f64(e)).abs())
        .fold(0.0, f64::max);
    debug_assert!(residual <= cfg.float_tolerance.max(1e-9) * (1.0 + total * total));
    Ok(PenotApprox { value, residual })
}

/// `z = Σ aⱼzⱼ + Σ sₖbₖ` with its gauge value `(Σ|aⱼ|√c(zⱼ))²`.
struct Representation {
    value: f64,
    gens: Vec<(usize, Scalar)>,
    skew: Vec<Scalar>,
}

/// Coefficients of `target` in the given columns when they are independent
/// and span it.
fn solve_independent(cols: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    if cols.is_empty() {
        return scalar::is_zero_vec(target).then(Vec::new);
    }
    let rows = target.len();
    let mut aug: Vec<Vec<Scalar>> = cols.to_vec();
    aug.push(target.to_vec());
    let m = Mat::from_cols(rows, &aug).ok()?;
    let (r, pivots) = matrix::rref(&m);
    if pivots.len() != cols.len() || pivots.iter().any(|&p| p >= cols.len()) {
        return None;
    }
    Some((0..cols.len()).map(|i| r[(i, cols.len())].clone()).collect())
}

/// `z ∈ D⁺` by the definition: `t ↦ c(z − t·zᵢ)` is recovered from its
/// values at `t = 0, 1, −1` and tested for nonnegativity, and
/// `s ↦ c(z − s)` on the skew part, which is affine, must be constant and
/// nonnegative.
pub fn oracle_dc_plus_probe(d: &FinGenDoubleCone, z: &Point) -> bool {
    let f = |w: &Point| pairing::cval(&z.sub(w));
    let f0 = f(&Point::zero(z.n()));
    if f0.is_negative() {
        return false;
    }
    for s in d.skew().basis_points() {
        if f(&s) != f0 || f(&s.scale(&scalar::int(-1))) != f0 {
            return false;
        }
    }
    let half = scalar::frac(1, 2);
    d.generators().iter().all(|g| {
        let fp = f(g.point());
        let fm = f(&g.point().scale(&scalar::int(-1)));
        let a = (&fp + &fm) * &half - &f0;
        let b = (&fp - &fm) * &half;
        if a.is_negative() {
            false
        } else if a.is_zero() {
            b.is_zero()
        } else {
            &b * &b <= scalar::int(4) * &a * &f0
        }
    })
}

/// Sign counts of the float eigenvalues, treating `|λ| ≤ zero_tol` as zero.
pub fn float_inertia(g: &Mat, zero_tol: f64) -> Inertia {
    let eig = to_dmatrix(g).symmetric_eigen();
    let mut out = Inertia {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    for &v in eig.eigenvalues.iter() {
        if v > zero_tol {
            out.n_plus += 1;
        } else if v < -zero_tol {
            out.n_minus += 1;
        } else {
            out.n_zero += 1;
        }
    }
    out
}

/// Smallest eigenvalue magnitude, used to select well-separated test forms.
pub fn min_abs_eigenvalue(g: &Mat) -> f64 {
    to_dmatrix(g)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, v| a.min(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_union_passes_vacuously() {
        let empty = Union { n: 1, parts: vec![] };
        assert!(oracle_monotone_pairs(&empty, &ProbeConfig::default()).passed());
    }

    #[test]
    fn skew_part_of_penot_representation_is_exact() {
        let s = Subspace::from_points(2, &[Point::from_i64(&[1, 0], &[0, 0])]).unwrap();
        let d = FinGenDoubleCone::new(s, &[Point::from_i64(&[0, 1], &[0, 1])]).unwrap();
        let z = Point::from_i64(&[3, 2], &[0, 2]);
        let p = oracle_penot_cone(&d, &z, &ProbeConfig::default()).unwrap();
        assert!((p.value - 4.0).abs() < 1e-12);
        assert!(p.residual < 1e-12);
    }
}
