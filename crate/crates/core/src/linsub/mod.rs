//! Linear monotone subspaces `L ⊂ Z`.
//!
//! Everything here reduces to the restricted quadratic form
//! `g = ½ BᵀJB` of a basis `B`: `L` is monotone iff `g` is positive
//! semidefinite, its skew part is `B·ker g`, and the Fitzpatrick function
//! `φ_L(z) = sup_{w∈L} z·w − c(w)` is the concave quadratic maximum
//! `½ bᵀu` with `b = BᵀJz`, `g·u = b/2`, or `+∞` when `b ∉ range g`.

mod classify;
mod extend;
mod sum;

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

pub use classify::classify;
pub use extend::extend_maximal;
pub use sum::sum_composition;

use crate::error::Error;
use crate::matrix::{self, Mat};
use crate::pairing::{self, Point};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

/// Value of a Fitzpatrick or Penot function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FitzValue {
    Finite(Scalar),
    PlusInfinity,
}

impl FitzValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, FitzValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            FitzValue::Finite(v) => Some(v),
            FitzValue::PlusInfinity => None,
        }
    }

    /// `self ≤ v`
    pub fn le(&self, v: &Scalar) -> bool {
        self.finite().is_some_and(|f| f <= v)
    }

    /// `self == v`
    pub fn eq_scalar(&self, v: &Scalar) -> bool {
        self.finite().is_some_and(|f| f == v)
    }
}

impl fmt::Display for FitzValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitzValue::Finite(v) => write!(f, "{v}"),
            FitzValue::PlusInfinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCheck {
    pub monotone: bool,
    /// A point of the subspace with `c(z) < 0` when not monotone.
    pub witness: Option<Point>,
}

fn check_dim(l: &Subspace, z: &Point) -> Result<(), Error> {
    if l.n() == z.n() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: l.n(),
            found: z.n(),
        })
    }
}

/// Gram form `g = ½ BᵀJB` of the canonical basis, so `c(B·u) = uᵀgu`.
pub fn gram(l: &Subspace) -> Mat {
    gram_of(l.basis())
}

pub(crate) fn gram_of(vectors: &[Vec<Scalar>]) -> Mat {
    let k = vectors.len();
    let half = scalar::frac(1, 2);
    let mut g = Mat::zeros(k, k);
    for i in 0..k {
        g[(i, i)] = pairing::cval_flat(&vectors[i]);
        for j in 0..i {
            let v = &half * pairing::couple_flat(&vectors[i], &vectors[j]);
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
    }
    g
}

fn combine(vectors: &[Vec<Scalar>], coeffs: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = alloc::vec![Scalar::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        scalar::axpy(&mut out, c, v);
    }
    out
}

/// Monotonicity test by the inertia of the Gram form; a negative direction
/// of the form is returned as witness.
pub fn is_monotone(l: &Subspace) -> MonotoneCheck {
    let d = matrix::diagonalize(&gram(l)).expect("gram forms are symmetric");
    match d.negative_direction() {
        None => MonotoneCheck {
            monotone: true,
            witness: None,
        },
        Some(p) => {
            let z = combine(l.basis(), p, 2 * l.n());
            MonotoneCheck {
                monotone: false,
                witness: Some(Point::from_flat(&z).expect("even length")),
            }
        }
    }
}

/// Monotonicity of `span(vectors)`. When the span is not monotone, the
/// witness is the simplest integer combination of the given vectors
/// (coefficients in `-2..=2`, least ℓ₁ norm, then lexicographic) with
/// `c < 0`, falling back to a direction of the Gram form.
pub fn is_monotone_spanned(n: usize, vectors: &[Point]) -> Result<MonotoneCheck, Error> {
    let hull = Subspace::from_points(n, vectors)?;
    let check = is_monotone(&hull);
    if check.monotone {
        return Ok(check);
    }
    let flat: Vec<Vec<Scalar>> = vectors.iter().map(Point::to_flat).collect();
    let witness = small_combination_witness(&flat).or(check.witness);
    Ok(MonotoneCheck {
        monotone: false,
        witness,
    })
}

const SMALL_COMBINATION_LIMIT: usize = 5;

fn small_combination_witness(vectors: &[Vec<Scalar>]) -> Option<Point> {
    let m = vectors.len();
    if m == 0 || m > SMALL_COMBINATION_LIMIT {
        return None;
    }
    let g = gram_of(vectors);
    let mut best: Option<(u32, Vec<i64>)> = None;
    let mut coeffs = alloc::vec![-2i64; m];
    loop {
        let l1: u32 = coeffs.iter().map(|c| c.unsigned_abs() as u32).sum();
        let leading_positive = coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        if leading_positive && best.as_ref().is_none_or(|(b, _)| l1 < *b) {
            let u: Vec<Scalar> = coeffs.iter().map(|&c| scalar::int(c)).collect();
            if g.bilinear(&u, &u).is_negative() {
                best = Some((l1, coeffs.clone()));
            }
        }
        // odometer over {-2, ..., 2}^m, last position fastest
        let mut i = m;
        loop {
            if i == 0 {
                let (_, c) = best?;
                let u: Vec<Scalar> = c.iter().map(|&v| scalar::int(v)).collect();
                let len = vectors[0].len();
                return Some(Point::from_flat(&combine(vectors, &u, len)).expect("even length"));
            }
            i -= 1;
            if coeffs[i] < 2 {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -2;
        }
    }
}

/// `c ≡ 0` on `l`.
pub fn is_skew(l: &Subspace) -> bool {
    let skew = gram(l).is_zero();
    debug_assert_eq!(skew, l.is_subspace_of(&pairing::perp(l)));
    skew
}

/// `{z ∈ L : c(z) = 0}`, which is the subspace `B·ker g` for monotone `L`.
pub fn skew_part(l: &Subspace) -> Result<Subspace, Error> {
    require_monotone(l)?;
    Ok(skew_part_unchecked(l))
}

fn skew_part_unchecked(l: &Subspace) -> Subspace {
    let kernel = matrix::nullspace_vectors(&gram(l));
    Subspace::from_vectors(l.n(), kernel.iter().map(|k| l.combine(k))).expect("length 2n")
}

fn require_monotone(l: &Subspace) -> Result<(), Error> {
    if is_monotone(l).monotone {
        Ok(())
    } else {
        Err(Error::NotMonotone)
    }
}

/// Fitzpatrick function of `l` at `z`. Non-monotone subspaces have
/// `φ ≡ +∞`.
pub fn fitz_eval(l: &Subspace, z: &Point) -> Result<FitzValue, Error> {
    check_dim(l, z)?;
    if !is_monotone(l).monotone {
        return Ok(FitzValue::PlusInfinity);
    }
    let zf = z.to_flat();
    let b: Vec<Scalar> = l.basis().iter().map(|v| pairing::couple_flat(v, &zf)).collect();
    let half = scalar::frac(1, 2);
    let rhs: Vec<Scalar> = b.iter().map(|v| v * &half).collect();
    match matrix::solve_in_range(&gram(l), &rhs) {
        Ok(u) => Ok(FitzValue::Finite(half * scalar::dot(&b, &u))),
        Err(Error::NotInRange) => Ok(FitzValue::PlusInfinity),
        Err(e) => Err(e),
    }
}

/// `dom φ_L = {z : BᵀJz ∈ range g}`; since `range g = (ker g)^⊥` this is
/// the coupling complement of `B·ker g`.
pub fn fitz_dom(l: &Subspace) -> Result<Subspace, Error> {
    require_monotone(l)?;
    Ok(pairing::perp(&skew_part_unchecked(l)))
}

/// Penot function `ψ_L = c + ι_L` of a monotone subspace.
pub fn penot_eval(l: &Subspace, z: &Point) -> Result<FitzValue, Error> {
    check_dim(l, z)?;
    require_monotone(l)?;
    Ok(if l.contains(z) {
        FitzValue::Finite(pairing::cval(z))
    } else {
        FitzValue::PlusInfinity
    })
}

/// `z ∈ L⁺ = [φ_L ≤ c]`, i.e. `z` is monotonically related to `L`.
pub fn in_plus(l: &Subspace, z: &Point) -> Result<bool, Error> {
    check_dim(l, z)?;
    let form = FitzForm::new(l)?;
    Ok(form.in_plus(z))
}

/// `[ψ_L = c]` of a monotone subspace. Finite-dimensional subspaces are
/// closed, so this is `L` itself; exposed so representability can be stated
/// as `Unit([ψ_L = c]) ⊆ L` rather than assumed.
pub fn penot_contact_set(l: &Subspace) -> Result<Subspace, Error> {
    require_monotone(l)?;
    Ok(l.clone())
}

/// Precomputed closed form of `φ_L` for a monotone subspace.
///
/// Diagonalizing `g` by congruence yields a basis `w_i` of `L` that is
/// pairwise orthogonal for the coupling; then
/// `φ_L(z) = ¼ Σ_{c(w_i)>0} (z·w_i)² / c(w_i)` on the complement of the
/// skew directions `{w_i : c(w_i) = 0}` and `+∞` off it.
#[derive(Debug, Clone)]
pub struct FitzForm {
    n: usize,
    terms: Vec<(Vec<Scalar>, Scalar)>,
    skew: Vec<Vec<Scalar>>,
}

impl FitzForm {
    pub fn new(l: &Subspace) -> Result<Self, Error> {
        let d = matrix::diagonalize(&gram(l)).expect("symmetric");
        if d.values.iter().any(Signed::is_negative) {
            return Err(Error::NotMonotone);
        }
        let mut terms = Vec::new();
        let mut skew = Vec::new();
        for (p, value) in d.vectors.iter().zip(d.values) {
            let w = l.combine(p);
            if value.is_zero() {
                skew.push(w);
            } else {
                terms.push((w, value));
            }
        }
        Ok(Self { n: l.n(), terms, skew })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval_flat(&self, z: &[Scalar]) -> FitzValue {
        if self.skew.iter().any(|s| !pairing::couple_flat(s, z).is_zero()) {
            return FitzValue::PlusInfinity;
        }
        let mut sum = Scalar::zero();
        for (w, c) in &self.terms {
            let t = pairing::couple_flat(w, z);
            sum += &t * &t / c;
        }
        FitzValue::Finite(sum / scalar::int(4))
    }

    pub fn eval(&self, z: &Point) -> FitzValue {
        self.eval_flat(&z.to_flat())
    }

    pub fn in_plus(&self, z: &Point) -> bool {
        self.eval(z).le(&pairing::cval(z))
    }

    /// `φ − c` at `z`, `None` off the domain.
    pub fn excess_flat(&self, z: &[Scalar]) -> Option<Scalar> {
        match self.eval_flat(z) {
            FitzValue::Finite(v) => Some(v - pairing::cval_flat(z)),
            FitzValue::PlusInfinity => None,
        }
    }

    /// Gram matrix of `φ` restricted to the subspace `w ⊆ dom φ`, in the
    /// canonical basis of `w`.
    pub fn matrix_on(&self, w: &Subspace) -> Mat {
        let k = w.dim();
        let mut phi = Mat::zeros(k, k);
        let quarter = scalar::frac(1, 4);
        let couplings: Vec<Vec<Scalar>> = self
            .terms
            .iter()
            .map(|(t, _)| w.basis().iter().map(|v| pairing::couple_flat(t, v)).collect())
            .collect();
        for a in 0..k {
            for b in 0..=a {
                let mut s = Scalar::zero();
                for (row, (_, c)) in couplings.iter().zip(&self.terms) {
                    s += &row[a] * &row[b] / c;
                }
                s *= &quarter;
                phi[(a, b)] = s.clone();
                phi[(b, a)] = s;
            }
        }
        phi
    }

    /// Matrix of `φ − c` on `w`.
    pub fn excess_on(&self, w: &Subspace) -> Mat {
        let phi = self.matrix_on(w);
        let g = gram(w);
        let k = w.dim();
        let mut q = Mat::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                q[(a, b)] = &phi[(a, b)] - &g[(a, b)];
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn line(x: i64, y: i64) -> Subspace {
        Subspace::from_points(1, &[Point::from_i64(&[x], &[y])]).unwrap()
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram(&line(1, 1)), Mat::from_i64(1, 1, &[1]));
        assert_eq!(gram(&line(1, 0)), Mat::from_i64(1, 1, &[0]));
        assert_eq!(gram(&Subspace::zero(1)).rows(), 0);
    }

    #[test]
    fn monotonicity_examples() {
        assert!(is_monotone(&line(1, 1)).monotone);
        let whole = is_monotone(&Subspace::whole(1));
        assert!(!whole.monotone);
        assert!(pairing::cval(whole.witness.as_ref().unwrap()).is_negative());
    }

    #[test]
    fn spanned_witness_is_simplest_combination() {
        let gens = [
            Point::from_i64(&[0, 1], &[1, 1]),
            Point::from_i64(&[1, 1], &[1, 0]),
            Point::from_i64(&[1, 0], &[1, 0]),
        ];
        let check = is_monotone_spanned(2, &gens).unwrap();
        assert!(!check.monotone);
        assert_eq!(check.witness.unwrap(), Point::from_i64(&[-1, -1], &[0, 1]));

        let hull = Subspace::from_points(2, &gens).unwrap();
        let plain = is_monotone(&hull);
        let w = plain.witness.unwrap();
        assert!(!plain.monotone && hull.contains(&w) && pairing::cval(&w).is_negative());
    }

    #[test]
    fn skew_examples() {
        assert!(is_skew(&line(1, 0)));
        assert!(!is_skew(&line(1, 1)));
        assert!(is_skew(&Subspace::zero(1)));
    }

    #[test]
    fn skew_part_examples() {
        assert_eq!(skew_part(&line(1, 1)).unwrap(), Subspace::zero(1));
        assert_eq!(skew_part(&line(1, 0)).unwrap(), line(1, 0));
        let l = Subspace::from_points(2, &[Point::from_i64(&[1, 0], &[0, 0]), Point::from_i64(&[0, 0], &[0, 1])])
            .unwrap();
        assert_eq!(skew_part(&l).unwrap(), l);
        assert_eq!(skew_part(&Subspace::whole(1)), Err(Error::NotMonotone));
    }

    #[test]
    fn fitz_eval_examples() {
        let diag = line(1, 1);
        assert_eq!(fitz_eval(&diag, &Point::from_i64(&[1], &[3])).unwrap(), FitzValue::Finite(int(4)));
        assert_eq!(fitz_eval(&diag, &Point::from_i64(&[1], &[0])).unwrap(), FitzValue::Finite(frac(1, 4)));
        let skew = line(1, 0);
        // (0,1) couples to the line with value 1, so the supremum diverges
        assert_eq!(fitz_eval(&skew, &Point::from_i64(&[0], &[1])).unwrap(), FitzValue::PlusInfinity);
        assert_eq!(fitz_eval(&skew, &Point::from_i64(&[5], &[0])).unwrap(), FitzValue::Finite(int(0)));
        assert_eq!(fitz_eval(&skew, &Point::from_i64(&[0], &[0])).unwrap(), FitzValue::Finite(int(0)));
        assert_eq!(fitz_eval(&skew, &Point::from_i64(&[1], &[1])).unwrap(), FitzValue::PlusInfinity);
        assert_eq!(
            fitz_eval(&Subspace::whole(1), &Point::zero(1)).unwrap(),
            FitzValue::PlusInfinity
        );
        assert!(fitz_eval(&diag, &Point::zero(2)).is_err());
    }

    #[test]
    fn fitz_dom_examples() {
        assert_eq!(fitz_dom(&line(1, 1)).unwrap(), Subspace::whole(1));
        assert_eq!(fitz_dom(&line(1, 0)).unwrap(), line(1, 0));
        assert_eq!(fitz_dom(&Subspace::zero(1)).unwrap(), Subspace::whole(1));
    }

    #[test]
    fn penot_examples() {
        let diag = line(1, 1);
        assert_eq!(penot_eval(&diag, &Point::from_i64(&[2], &[2])).unwrap(), FitzValue::Finite(int(4)));
        assert_eq!(penot_eval(&diag, &Point::from_i64(&[1], &[0])).unwrap(), FitzValue::PlusInfinity);
        assert_eq!(
            penot_eval(&Subspace::zero(1), &Point::zero(1)).unwrap(),
            FitzValue::Finite(int(0))
        );
        assert_eq!(penot_eval(&Subspace::whole(1), &Point::zero(1)), Err(Error::NotMonotone));
    }

    #[test]
    fn in_plus_examples() {
        let diag = line(1, 1);
        assert!(in_plus(&diag, &Point::from_i64(&[1], &[1])).unwrap());
        assert!(!in_plus(&diag, &Point::from_i64(&[1], &[0])).unwrap());
        assert!(in_plus(&line(1, 0), &Point::from_i64(&[5], &[0])).unwrap());
        assert_eq!(in_plus(&Subspace::whole(1), &Point::zero(1)), Err(Error::NotMonotone));
    }

    #[test]
    fn closed_form_matches_range_solve() {
        let l = Subspace::from_points(
            2,
            &[Point::from_i64(&[1, 0], &[2, 1]), Point::from_i64(&[0, 1], &[-1, 0])],
        )
        .unwrap();
        let form = FitzForm::new(&l).unwrap();
        for (x, y) in [([1, 2], [3, -1]), ([0, 0], [1, 0]), ([2, -3], [0, 5])] {
            let z = Point::from_i64(&x, &y);
            assert_eq!(form.eval(&z), fitz_eval(&l, &z).unwrap());
        }
    }
}
