//! Seeded random instances: monotone and skew subspaces, monotone
//! double-cones and finitely supported sequences.
//!
//! Subspaces are built in a split normal form and then moved by a random
//! product of maps that preserve `c`:
//! `(x, y) ↦ (x + By, y)` and `(x, y) ↦ (x, y + Bx)` with `B` skew,
//! `(x, y) ↦ (Ax, A⁻ᵀy)` with `A` elementary, and `xᵢ ↔ yᵢ` swaps.
//! Such maps send monotone sets to monotone sets and skew sets to skew sets.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::doublecone::FinGenDoubleCone;
use crate::gossez::FinSeq;
use crate::matrix::Mat;
use crate::pairing::{self, Point};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    scalar::int(rng.gen_range(-bound..=bound))
}

/// `p/q` with `|p| ≤ bound` and `q ∈ 1..=den`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Scalar {
    scalar::frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=den))
}

pub fn rational_vector<R: Rng>(rng: &mut R, len: usize, bound: i64, den: i64) -> Vec<Scalar> {
    (0..len).map(|_| small_rational(rng, bound, den)).collect()
}

pub fn rational_point<R: Rng>(rng: &mut R, n: usize, bound: i64, den: i64) -> Point {
    Point::from_flat(&rational_vector(rng, 2 * n, bound, den)).expect("even length")
}

/// Symmetric matrix with small rational entries.
pub fn symmetric<R: Rng>(rng: &mut R, dim: usize, bound: i64, den: i64) -> Mat {
    let mut m = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..=i {
            let v = small_rational(rng, bound, den);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// Skew-symmetric matrix with small integer entries.
pub fn skew_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Mat {
    let mut k = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            let v = small_int(rng, bound);
            k[(i, j)] = -v.clone();
            k[(j, i)] = v;
        }
    }
    k
}

/// A random `c`-preserving linear map of `ℝ²ⁿ`, as a `2n × 2n` matrix
/// acting on flat vectors.
pub fn c_preserving_map<R: Rng>(rng: &mut R, n: usize) -> Mat {
    let mut t = Mat::identity(2 * n);
    for _ in 0..2 * n + 1 {
        let step = match rng.gen_range(0..4) {
            0 => shear(n, &skew_matrix(rng, n, 1), true),
            1 => shear(n, &skew_matrix(rng, n, 1), false),
            2 if n > 1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                elementary(n, i, j, &small_int(rng, 2))
            }
            _ => swap(n, rng.gen_range(0..n)),
        };
        t = step.mul(&t).expect("square of equal size");
    }
    t
}

fn shear(n: usize, b: &Mat, upper: bool) -> Mat {
    let mut m = Mat::identity(2 * n);
    for i in 0..n {
        for j in 0..n {
            if upper {
                m[(i, n + j)] = b[(i, j)].clone();
            } else {
                m[(n + i, j)] = b[(i, j)].clone();
            }
        }
    }
    m
}

/// `x ↦ (I + t·eᵢeⱼᵀ)x`, `y ↦ (I − t·eⱼeᵢᵀ)y`.
fn elementary(n: usize, i: usize, j: usize, t: &Scalar) -> Mat {
    let mut m = Mat::identity(2 * n);
    m[(i, j)] = t.clone();
    m[(n + j, n + i)] = -t.clone();
    m
}

fn swap(n: usize, i: usize) -> Mat {
    let mut m = Mat::identity(2 * n);
    m[(i, i)] = Scalar::zero();
    m[(n + i, n + i)] = Scalar::zero();
    m[(i, n + i)] = scalar::one();
    m[(n + i, i)] = scalar::one();
    m
}

fn transform(t: &Mat, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    vectors.iter().map(|v| t.mul_vec(v).expect("length 2n")).collect()
}

/// Normal form `span{(eᵢ, dᵢ·eᵢ)}` over `dim` distinct coordinates with
/// `positive` of the `dᵢ` drawn from `1..=3` and the rest zero.
fn normal_form<R: Rng>(rng: &mut R, n: usize, dim: usize, positive: usize) -> Vec<Vec<Scalar>> {
    let mut coords: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        coords.swap(i, rng.gen_range(0..=i));
    }
    coords
        .iter()
        .take(dim)
        .enumerate()
        .map(|(k, &i)| {
            let mut v = vec![Scalar::zero(); 2 * n];
            v[i] = scalar::one();
            if k < positive {
                v[n + i] = scalar::int(rng.gen_range(1..=3));
            }
            v
        })
        .collect()
}

/// Monotone subspace of dimension `dim ≤ n` whose skew part has dimension
/// `dim − positive`.
pub fn monotone_subspace_with<R: Rng>(rng: &mut R, n: usize, dim: usize, positive: usize) -> Subspace {
    assert!(positive <= dim && dim <= n);
    let t = c_preserving_map(rng, n);
    let basis = transform(&t, &normal_form(rng, n, dim, positive));
    Subspace::from_vectors(n, basis).expect("length 2n")
}

pub fn monotone_subspace<R: Rng>(rng: &mut R, n: usize) -> Subspace {
    let dim = rng.gen_range(0..=n);
    let positive = rng.gen_range(0..=dim);
    monotone_subspace_with(rng, n, dim, positive)
}

pub fn skew_subspace<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Subspace {
    monotone_subspace_with(rng, n, dim, 0)
}

/// Monotone double-cone with at most `max_gens` generators: a skew part in
/// normal form, generators drawn in its complement and kept only when
/// they pass the pairwise discriminant test, all moved by one random
/// `c`-preserving map.
pub fn monotone_cone<R: Rng>(rng: &mut R, n: usize, max_gens: usize) -> FinGenDoubleCone {
    let skew_dim = rng.gen_range(0..=n.saturating_sub(1));
    let skew_basis = normal_form(rng, n, skew_dim, 0);
    let skew = Subspace::from_vectors(n, skew_basis.clone()).expect("length 2n");
    let dom = pairing::perp(&skew);
    let target = rng.gen_range(1..=max_gens.max(1));
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for _ in 0..50 * target {
        if gens.len() == target {
            break;
        }
        let coeffs: Vec<Scalar> = (0..dom.dim()).map(|_| small_int(rng, 2)).collect();
        let z = dom.combine(&coeffs);
        let c = pairing::cval_flat(&z);
        if !c.is_positive() {
            continue;
        }
        let ok = gens.iter().all(|g| {
            let p = pairing::couple_flat(g, &z);
            &p * &p <= scalar::int(4) * &c * pairing::cval_flat(g)
        });
        if ok {
            gens.push(z);
        }
    }
    let t = c_preserving_map(rng, n);
    let skew = Subspace::from_vectors(n, transform(&t, &skew_basis)).expect("length 2n");
    let points: Vec<Point> = transform(&t, &gens)
        .iter()
        .map(|v| Point::from_flat(v).expect("even length"))
        .collect();
    FinGenDoubleCone::new(skew, &points).expect("skew part and positive generators")
}

/// Sequence with support size at most `max_support` among indices
/// `1..=2·max_support`.
pub fn fin_seq<R: Rng>(rng: &mut R, max_support: usize) -> FinSeq {
    let len = rng.gen_range(0..=max_support);
    let top = 2 * max_support.max(1);
    FinSeq::from_pairs((0..len).map(|_| (rng.gen_range(1..=top), small_rational(rng, 9, 7))))
        .expect("indices start at 1")
}
