//! Finitely generated double-cones `D = S ∪ ℝz₁ ∪ … ∪ ℝzₘ`.
//!
//! `S` is a skew subspace and each `zᵢ` spans a line. For a monotone cone
//! the Fitzpatrick function is `φ_D(z) = max_i (z·zᵢ)² / (4c(zᵢ))` on
//! `S⊥` and `+∞` off it; all crown quantities are kept squared so nothing
//! irrational is ever formed.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linsub::{self, FitzValue, MonotoneCheck};
use crate::matrix::{self, Mat};
use crate::pairing::{self, Point};
use crate::report::{ClassificationReport, Tier, Verdict, Witness};
use crate::sampling::{GridSampler, ProbePlan};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    z: Point,
    c: Scalar,
}

impl Generator {
    pub fn point(&self) -> &Point {
        &self.z
    }

    /// `c(z)`, cached.
    pub fn c(&self) -> &Scalar {
        &self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGenDoubleCone {
    n: usize,
    skew: Subspace,
    gens: Vec<Generator>,
}

impl FinGenDoubleCone {
    /// Builds the cone from a skew subspace and generator points.
    ///
    /// Generators are scaled so their first nonzero coordinate is 1 and
    /// parallel duplicates are dropped. A generator with `c = 0` is
    /// rejected; generators with `c < 0` are kept so non-monotone cones can
    /// still be stated and tested.
    pub fn new(skew: Subspace, generators: &[Point]) -> Result<Self, Error> {
        let n = skew.n();
        if !linsub::is_skew(&skew) {
            return Err(Error::NotSkew);
        }
        let mut gens: Vec<Generator> = Vec::new();
        for (index, z) in generators.iter().enumerate() {
            if z.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: z.n(),
                });
            }
            let z = Point::from_flat(&scalar::projective_normal(&z.to_flat()))?;
            let c = pairing::cval(&z);
            if c.is_zero() {
                return Err(Error::DegenerateGenerator { index });
            }
            if !gens.iter().any(|g| g.z == z) {
                gens.push(Generator { z, c });
            }
        }
        Ok(Self { n, skew, gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn skew(&self) -> &Subspace {
        &self.skew
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Membership in the point-set `S ∪ ⋃ ℝzᵢ`.
    pub fn contains(&self, z: &Point) -> bool {
        if z.n() != self.n {
            return false;
        }
        if self.skew.contains(z) {
            return true;
        }
        let key = scalar::projective_normal(&z.to_flat());
        self.gens.iter().any(|g| g.z.to_flat() == key)
    }

    /// The point-set as a subspace, when it is one: a pure skew subspace or
    /// a single line.
    pub fn as_subspace(&self) -> Option<Subspace> {
        match (self.gens.as_slice(), self.skew.dim()) {
            ([], _) => Some(self.skew.clone()),
            ([g], 0) => Some(Subspace::from_points(self.n, core::slice::from_ref(&g.z)).expect("same n")),
            _ => None,
        }
    }

    fn has_negative_generator(&self) -> bool {
        self.gens.iter().any(|g| g.c.is_negative())
    }

    fn check_dim(&self, z: &Point) -> Result<(), Error> {
        if z.n() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: z.n(),
            })
        }
    }

    fn couplings(&self, z: &Point) -> Vec<Scalar> {
        self.gens
            .iter()
            .map(|g| pairing::couple(&g.z, z).expect("same n"))
            .collect()
    }
}

/// Result of the pairwise monotonicity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcMonotoneCheck {
    pub monotone: bool,
    /// Two points of the cone with `c(a − b) < 0`.
    pub witness: Option<(Point, Point)>,
}

/// Monotonicity by generator pairs: every `c(zᵢ) ≥ 0`, every `zᵢ ⊥ S`,
/// and `(zᵢ·zⱼ)² ≤ 4c(zᵢ)c(zⱼ)`. Scale invariance makes pairs of
/// generators and skew basis vectors sufficient.
pub fn dc_is_monotone(d: &FinGenDoubleCone) -> DcMonotoneCheck {
    let fail = |a: Point, b: Point| {
        debug_assert!(pairing::cval(&a.sub(&b)).is_negative());
        DcMonotoneCheck {
            monotone: false,
            witness: Some((a, b)),
        }
    };
    for g in &d.gens {
        if g.c.is_negative() {
            return fail(g.z.clone(), Point::zero(d.n));
        }
    }
    for g in &d.gens {
        for s in d.skew.basis_points() {
            let zs = pairing::couple(&g.z, &s).expect("same n");
            if !zs.is_zero() {
                // c(z − t·s) = c(z) − t(z·s) = −1
                let t = (&g.c + scalar::one()) / zs;
                return fail(g.z.clone(), s.scale(&t));
            }
        }
    }
    for (i, gi) in d.gens.iter().enumerate() {
        for gj in &d.gens[i + 1..] {
            let p = pairing::couple(&gi.z, &gj.z).expect("same n");
            if &p * &p > scalar::int(4) * &gi.c * &gj.c {
                // c(t·zᵢ − zⱼ) = c(zⱼ) − (zᵢ·zⱼ)²/(4c(zᵢ)) at the vertex
                let t = p / (scalar::int(2) * &gi.c);
                return fail(gi.z.scale(&t), gj.z.clone());
            }
        }
    }
    DcMonotoneCheck {
        monotone: true,
        witness: None,
    }
}

/// Domain of `φ_D`: the coupling complement of the skew part, or `{0}`
/// (meaning `φ ≡ +∞`) when some generator has `c < 0`.
pub fn dc_fitz_dom(d: &FinGenDoubleCone) -> Option<Subspace> {
    (!d.has_negative_generator()).then(|| pairing::perp(&d.skew))
}

/// `φ_D(z)`.
pub fn dc_fitz_eval(d: &FinGenDoubleCone, z: &Point) -> Result<FitzValue, Error> {
    d.check_dim(z)?;
    if d.has_negative_generator() || !pairing::perp(&d.skew).contains(z) {
        return Ok(FitzValue::PlusInfinity);
    }
    Ok(FitzValue::Finite(sup_ratio(d, z) / scalar::int(4)))
}

/// `max_i (z·zᵢ)² / c(zᵢ)`, zero without generators.
fn sup_ratio(d: &FinGenDoubleCone, z: &Point) -> Scalar {
    d.couplings(z)
        .into_iter()
        .zip(&d.gens)
        .map(|(p, g)| &p * &p / &g.c)
        .fold(Scalar::zero(), |a, b| if b > a { b } else { a })
}

/// `z ∈ D⁺`, evaluated without square roots: points with `c(z) = 0` must be
/// orthogonal to the whole hull, points with `c(z) > 0` must lie in `S⊥`
/// and pass the discriminant test against every generator.
pub fn dc_in_plus(d: &FinGenDoubleCone, z: &Point) -> Result<bool, Error> {
    d.check_dim(z)?;
    if d.has_negative_generator() {
        return Ok(false);
    }
    let cz = pairing::cval(z);
    if cz.is_negative() {
        return Ok(false);
    }
    if !pairing::perp(&d.skew).contains(z) {
        return Ok(false);
    }
    let four_c = scalar::int(4) * &cz;
    Ok(d.couplings(z)
        .iter()
        .zip(&d.gens)
        .all(|(p, g)| p * p <= &four_c * &g.c))
}

/// `σ_C(z)²` for the crown `C`, i.e. `4φ_D` as an extended value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSq(pub FitzValue);

pub fn dc_sigma_sq(d: &FinGenDoubleCone, z: &Point) -> Result<SigmaSq, Error> {
    d.check_dim(z)?;
    if !d.gens.iter().any(|g| g.c.is_positive()) {
        return Err(Error::EmptyPositivePart);
    }
    if !pairing::perp(&d.skew).contains(z) {
        return Ok(SigmaSq(FitzValue::PlusInfinity));
    }
    let best = d
        .couplings(z)
        .into_iter()
        .zip(&d.gens)
        .filter(|(_, g)| g.c.is_positive())
        .map(|(p, g)| &p * &p / &g.c)
        .fold(Scalar::zero(), |a, b| if b > a { b } else { a });
    Ok(SigmaSq(FitzValue::Finite(best)))
}

fn spanning_points(d: &FinGenDoubleCone) -> Vec<Point> {
    d.skew
        .basis_points()
        .into_iter()
        .chain(d.gens.iter().map(|g| g.z.clone()))
        .collect()
}

pub fn dc_lin_hull(d: &FinGenDoubleCone) -> Subspace {
    Subspace::from_points(d.n, &spanning_points(d)).expect("same n")
}

/// Monotonicity of the linear hull, with the simplest integer combination
/// of skew basis vectors and generators as witness.
pub fn dc_hull_monotone(d: &FinGenDoubleCone) -> MonotoneCheck {
    linsub::is_monotone_spanned(d.n, &spanning_points(d)).expect("same n")
}

/// Exact Penot value, available when the point-set is a subspace.
pub fn dc_penot_eval(d: &FinGenDoubleCone, z: &Point) -> Result<FitzValue, Error> {
    d.check_dim(z)?;
    match d.as_subspace() {
        Some(l) => linsub::penot_eval(&l, z),
        None => Err(Error::NotLinear),
    }
}

const MONOTONE: &str = "generator discriminants (zi.zj)^2 <= 4 c(zi) c(zj), generators orthogonal to S";
const SKEW: &str = "no positive generators";
const REPRESENTABLE: &str = "[psi = c] equals the cone";
const NI_FORM: &str = "some generator quadric vanishes on dom phi, all are nonpositive there";
const NI_SHORTCUT: &str = "phi >= (z.zi)^2 / 4c(zi) >= c on dom phi";
const NI_PERP: &str = "a point of dom phi orthogonal to every generator has c > 0";
const NI_PROBE: &str = "sampled points of dom phi satisfy phi >= c";
const NI_POINT: &str = "a point of dom phi has phi < c";
const UNIQUE: &str = "NI, or dom phi is monotone";
const DUAL: &str = "dual representable coincides with maximal in finite dimension";
const MAXIMAL: &str = "monotone, representable and NI";
const HULL: &str = "c is positive semidefinite on the linear hull";
const UNDEFINED: &str = "class flags are defined for monotone relations only";

/// Classification of a double-cone.
///
/// Cones whose point-set is a subspace are handed to the subspace
/// classifier. Otherwise every flag is exact except NI (and with it unique
/// and maximal) when `dom φ = S⊥` is neither monotone nor covered by an
/// exact shortcut; there `φ ≥ c` is checked on `plan.samples` grid points
/// and the verdict is tagged `Probed`. Any counterexample found is exact.
pub fn dc_classify(d: &FinGenDoubleCone, plan: &ProbePlan) -> ClassificationReport {
    let hull = dc_hull_monotone(d);
    let hull_verdict = Verdict::exact(hull.monotone, HULL).with_witness(hull.witness.map(Witness::Point));
    let mono = dc_is_monotone(d);
    let monotone = Verdict::exact(mono.monotone, MONOTONE)
        .with_witness(mono.witness.map(|(a, b)| Witness::Pair(a, b)));

    if !mono.monotone {
        let undefined = Verdict::exact(false, UNDEFINED);
        let skew_holds = d.gens.is_empty();
        return ClassificationReport {
            n: d.n,
            monotone,
            skew: Verdict::exact(skew_holds, SKEW),
            representable: undefined.clone(),
            ni: undefined.clone(),
            unique: undefined.clone(),
            dual_representable: undefined.clone(),
            maximal: undefined,
            hull_monotone: Some(hull_verdict),
            notes: vec![UNDEFINED.to_string()],
        };
    }

    if let Some(l) = d.as_subspace() {
        let mut report = linsub::classify(&l);
        report.hull_monotone = Some(hull_verdict);
        report.notes.push("point-set is a subspace; classified as such".to_string());
        return report;
    }

    let first = d.gens[0].z.clone();
    let skew = Verdict::exact(false, SKEW).with_witness(Some(Witness::Point(first)));
    let repr_witness = representability_witness(d);
    let representable =
        Verdict::exact(repr_witness.is_none(), REPRESENTABLE).with_witness(repr_witness.map(Witness::Point));

    let dom = pairing::perp(&d.skew);
    let dom_check = linsub::is_monotone(&dom);
    let ni = ni_verdict(d, &dom, dom_check.monotone, plan);
    let ni_point = match &ni.witness {
        Some(Witness::Point(p)) => Some(p.clone()),
        _ => None,
    };

    let unique_holds = ni.holds || dom_check.monotone;
    let unique_tier = if dom_check.monotone { Tier::Exact } else { ni.tier };
    let unique_witness = match (&ni_point, &dom_check.witness) {
        (Some(z0), Some(e)) if !unique_holds => Some(non_unique_pair(d, z0, e)),
        _ => None,
    };
    let unique = Verdict::exact(unique_holds, UNIQUE)
        .with_tier(unique_tier)
        .with_witness(unique_witness);

    let maximal_holds = representable.holds && ni.holds;
    let maximal_tier = if representable.holds { ni.tier } else { Tier::Exact };
    let maximal_witness = if !representable.holds {
        representable.witness.clone()
    } else {
        ni.witness.clone()
    };
    let maximal = Verdict::exact(maximal_holds, MAXIMAL)
        .with_tier(maximal_tier)
        .with_witness(maximal_witness);
    let dual_representable = Verdict {
        criterion: DUAL,
        ..maximal.clone()
    };
    ClassificationReport {
        n: d.n,
        monotone,
        skew,
        representable,
        ni,
        unique,
        dual_representable,
        maximal,
        hull_monotone: Some(hull_verdict),
        notes: vec![DUAL.to_string()],
    }
}

/// A point of `[ψ_D = c]` outside `D`, if any.
///
/// With a nonzero skew part, `z₁ + t·s` has `ψ = c` (split it as
/// `λ·(z₁/λ) + (1−λ)·(t·s/(1−λ))` and let `λ → 1`). Without one, a pair
/// at discriminant equality spans a plane where `c` is a perfect square
/// `(|a|√c(zᵢ) + |b|√c(zⱼ))²` on the matching quadrants, so `ψ = c` there.
/// When all pairs are strict, `[ψ_D = c]` is the cone itself.
fn representability_witness(d: &FinGenDoubleCone) -> Option<Point> {
    let off_lines = |p: &Point| !d.contains(p);
    if let Some(s) = d.skew.basis_points().first() {
        let z1 = &d.gens[0].z;
        return (1..)
            .map(|t| z1.add(&s.scale(&scalar::int(t))))
            .find(off_lines);
    }
    for (i, gi) in d.gens.iter().enumerate() {
        for gj in &d.gens[i + 1..] {
            let p = pairing::couple(&gi.z, &gj.z).expect("same n");
            if &p * &p == scalar::int(4) * &gi.c * &gj.c {
                let sign = if p.is_negative() { -1 } else { 1 };
                return (1..)
                    .map(|k| gi.z.add(&gj.z.scale(&scalar::int(sign * k))))
                    .find(off_lines);
            }
        }
    }
    None
}

fn ni_verdict(d: &FinGenDoubleCone, dom: &Subspace, dom_monotone: bool, plan: &ProbePlan) -> Verdict {
    let quadrics: Vec<Mat> = d.gens.iter().map(|g| generator_quadric(g, dom)).collect();
    if dom_monotone {
        let vanishing = quadrics.iter().any(Mat::is_zero);
        let nonpositive = quadrics.iter().all(|q| matrix::inertia(q).expect("symmetric").is_nsd());
        let holds = vanishing && nonpositive;
        let witness = (!holds).then(|| non_ni_point_on_monotone_dom(d, dom, &quadrics)).flatten();
        return Verdict::exact(holds, NI_FORM).with_witness(witness.map(Witness::Point));
    }
    if quadrics.iter().any(|q| matrix::inertia(q).expect("symmetric").is_psd()) {
        return Verdict::exact(true, NI_SHORTCUT);
    }
    let orth = pairing::perp(&dc_lin_hull(d));
    let diag = matrix::diagonalize(&linsub::gram(&orth)).expect("symmetric");
    if let Some(p) = diag.positive_direction() {
        let z = Point::from_flat(&orth.combine(p)).expect("even length");
        return Verdict::exact(false, NI_PERP).with_witness(Some(Witness::Point(z)));
    }
    let below = |z: &Point| sup_ratio(d, z) < scalar::int(4) * pairing::cval(z);
    if let Some(z) = small_combinations(dom).find(below) {
        return Verdict::exact(false, NI_POINT).with_witness(Some(Witness::Point(z)));
    }
    let mut sampler = GridSampler::from_plan(plan);
    for _ in 0..plan.samples {
        let z = sampler.point_in(dom);
        if sup_ratio(d, &z) < scalar::int(4) * pairing::cval(&z) {
            return Verdict::exact(false, NI_POINT).with_witness(Some(Witness::Point(z)));
        }
    }
    Verdict::exact(true, NI_PROBE).with_tier(Tier::Probed { samples: plan.samples })
}

/// Combinations of the basis of `s` with coefficients in `{−1, 0, 1}`, for
/// readable witnesses; skipped above dimension 6.
fn small_combinations(s: &Subspace) -> impl Iterator<Item = Point> + '_ {
    let k = s.dim();
    let count = if k <= 6 { 3usize.pow(k as u32) } else { 0 };
    (1..count).map(move |mut code| {
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| {
                let c = (code % 3) as i64 - 1;
                code /= 3;
                scalar::int(c)
            })
            .collect();
        Point::from_flat(&s.combine(&coeffs)).expect("even length")
    })
}

/// Matrix on `dom` of `Qᵢ(z) = (z·zᵢ)² − 4c(zᵢ)c(z)`.
fn generator_quadric(g: &Generator, dom: &Subspace) -> Mat {
    let k = dom.dim();
    let zf = g.z.to_flat();
    let p: Vec<Scalar> = dom.basis().iter().map(|v| pairing::couple_flat(&zf, v)).collect();
    let gram = linsub::gram(dom);
    let four_c = scalar::int(4) * &g.c;
    let mut q = Mat::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            q[(a, b)] = &p[a] * &p[b] - &four_c * &gram[(a, b)];
        }
    }
    q
}

/// On a monotone `dom` every quadric is nonpositive, so NI fails exactly
/// when no quadric vanishes identically. A point where all of them are
/// nonzero lies off the finitely many zero sets; such a point is found
/// among `b₀ + t·b₁ + t²·b₂ + …` for some small integer `t`, since each
/// nonzero quadric restricted to that curve is a nonzero polynomial in `t`.
fn non_ni_point_on_monotone_dom(d: &FinGenDoubleCone, dom: &Subspace, quadrics: &[Mat]) -> Option<Point> {
    let k = dom.dim();
    let bound = 2 * k * quadrics.len().max(1) + 1;
    (0..=bound as i64).find_map(|t| {
        let mut coeffs = Vec::with_capacity(k);
        let mut pow = scalar::one();
        for _ in 0..k {
            coeffs.push(pow.clone());
            pow *= scalar::int(t);
        }
        let z = Point::from_flat(&dom.combine(&coeffs)).expect("even length");
        (sup_ratio(d, &z) < scalar::int(4) * pairing::cval(&z)).then_some(z)
    })
}

/// `z0 ± t·e` with `φ(z0) < c(z0)` and `c(e) < 0`, halving `t` until both
/// points are in `[φ ≤ c]`.
fn non_unique_pair(d: &FinGenDoubleCone, z0: &Point, e: &Point) -> Witness {
    let in_plus = |p: &Point| sup_ratio(d, p) <= scalar::int(4) * pairing::cval(p);
    let half = scalar::frac(1, 2);
    let mut t = scalar::one();
    loop {
        let step = e.scale(&t);
        let a = z0.add(&step);
        let b = z0.sub(&step);
        if in_plus(&a) && in_plus(&b) {
            return Witness::Pair(a, b);
        }
        t *= &half;
    }
}
