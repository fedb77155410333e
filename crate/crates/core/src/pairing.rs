//! The space `Z = ℝⁿ × ℝⁿ` with its coupling.
//!
//! A point is `z = (x, y)` where `y` stands for the dual coordinate. The
//! coupling is `z·w = ⟨x_z, y_w⟩ + ⟨x_w, y_z⟩` and the duality product is
//! `c(z) = ⟨x, y⟩ = ½ z·z`. Points are also handled in flat form
//! `[x₁..xₙ, y₁..yₙ]`, which is how subspaces store their bases.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{self, Mat};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    x: Vec<Scalar>,
    y: Vec<Scalar>,
}

impl Point {
    pub fn new(x: Vec<Scalar>, y: Vec<Scalar>) -> Result<Self, Error> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn from_i64(x: &[i64], y: &[i64]) -> Self {
        Self::new(
            x.iter().map(|&v| scalar::int(v)).collect(),
            y.iter().map(|&v| scalar::int(v)).collect(),
        )
        .expect("equal lengths")
    }

    pub fn zero(n: usize) -> Self {
        Self {
            x: alloc::vec![Scalar::zero(); n],
            y: alloc::vec![Scalar::zero(); n],
        }
    }

    /// Splits a flat vector of even length into its two halves.
    pub fn from_flat(v: &[Scalar]) -> Result<Self, Error> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Ok(Self {
            x: v[..n].to_vec(),
            y: v[n..].to_vec(),
        })
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        let mut v = self.x.clone();
        v.extend(self.y.iter().cloned());
        v
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn y(&self) -> &[Scalar] {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.x) && scalar::is_zero_vec(&self.y)
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        Self {
            x: scalar::scale_vec(t, &self.x),
            y: scalar::scale_vec(t, &self.y),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            x: scalar::add_vec(&self.x, &other.x),
            y: scalar::add_vec(&self.y, &other.y),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            x: scalar::sub_vec(&self.x, &other.x),
            y: scalar::sub_vec(&self.y, &other.y),
        }
    }

    /// `(x, y) ↦ (x, −y)`, the reflection used for `−A`.
    pub fn flip_dual(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: self.y.iter().map(|v| -v.clone()).collect(),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "((")?;
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "),(")?;
        for (i, v) in self.y.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "))")
    }
}

fn check_same(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}

/// `z·w = ⟨x_z, y_w⟩ + ⟨x_w, y_z⟩`
pub fn couple(z: &Point, w: &Point) -> Result<Scalar, Error> {
    check_same(z.n(), w.n())?;
    Ok(scalar::dot(&z.x, &w.y) + scalar::dot(&w.x, &z.y))
}

/// `c(z) = ⟨x, y⟩`
pub fn cval(z: &Point) -> Scalar {
    scalar::dot(&z.x, &z.y)
}

/// Coupling of two flat vectors of length `2n`.
pub fn couple_flat(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() / 2;
    scalar::dot(&a[..n], &b[n..]) + scalar::dot(&b[..n], &a[n..])
}

pub fn cval_flat(a: &[Scalar]) -> Scalar {
    let n = a.len() / 2;
    scalar::dot(&a[..n], &a[n..])
}

/// `J·v`: swaps the two halves of a flat vector.
pub fn apply_j(v: &[Scalar]) -> Vec<Scalar> {
    let n = v.len() / 2;
    let mut out = v[n..].to_vec();
    out.extend(v[..n].iter().cloned());
    out
}

/// The symmetric `2n × 2n` matrix `J = [[0, I], [I, 0]]`.
pub fn pairing_matrix(n: usize) -> Mat {
    let mut j = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = scalar::one();
        j[(n + i, i)] = scalar::one();
    }
    j
}

/// Orthogonal complement with respect to the coupling.
pub fn perp(a: &Subspace) -> Subspace {
    let n = a.n();
    let rows: Vec<Vec<Scalar>> = a.basis().iter().map(|b| apply_j(b)).collect();
    let m = Mat::from_rows(2 * n, &rows).expect("basis rows have length 2n");
    Subspace::from_vectors(n, matrix::nullspace_vectors(&m)).expect("kernel vectors have length 2n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn z1() -> Point {
        Point::from_i64(&[0, 1], &[1, 1])
    }
    fn z2() -> Point {
        Point::from_i64(&[1, 1], &[1, 0])
    }
    fn z3() -> Point {
        Point::from_i64(&[1, 0], &[1, 0])
    }

    #[test]
    fn couple_values_of_three_generators() {
        assert_eq!(couple(&z1(), &z2()).unwrap(), int(2));
        assert_eq!(couple(&z2(), &z3()).unwrap(), int(2));
        assert_eq!(couple(&z1(), &z3()).unwrap(), int(1));
        assert_eq!(couple(&z1(), &Point::zero(2)).unwrap(), int(0));
        assert!(couple(&z1(), &Point::zero(3)).is_err());
    }

    #[test]
    fn cval_values() {
        for z in [z1(), z2(), z3()] {
            assert_eq!(cval(&z), int(1));
        }
        assert_eq!(cval(&Point::from_i64(&[-1, -1], &[0, 1])), int(-1));
        assert_eq!(cval(&Point::zero(2)), int(0));
        let z = z1();
        assert_eq!(couple(&z, &z).unwrap(), int(2) * cval(&z));
    }

    #[test]
    fn perp_examples() {
        let line = Subspace::from_points(1, &[Point::from_i64(&[1], &[0])]).unwrap();
        assert_eq!(perp(&line), line);
        assert_eq!(perp(&Subspace::zero(1)), Subspace::whole(1));
        assert_eq!(perp(&Subspace::whole(2)), Subspace::zero(2));
    }

    #[test]
    fn pairing_matrix_has_split_inertia() {
        let i = crate::matrix::inertia(&pairing_matrix(3)).unwrap();
        assert_eq!((i.n_plus, i.n_zero, i.n_minus), (3, 0, 3));
    }
}
