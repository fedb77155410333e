use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{self, Mat};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

/// `M + AᵀNA = {(x, x* + Aᵀy*) : (x, x*) ∈ M, (Ax, y*) ∈ N}` for
/// `M ⊂ ℝⁿ×ℝⁿ`, `N ⊂ ℝᵐ×ℝᵐ` and `A` of shape `m × n`.
///
/// With `M = B_M·α` and `N = B_N·β`, the coupling constraint is the linear
/// system `A·x_M(α) = x_N(β)`; every kernel vector maps to one point.
pub fn sum_composition(m: &Subspace, nn: &Subspace, a: &Mat) -> Result<Subspace, Error> {
    let n = m.n();
    let k = nn.n();
    if a.rows() != k || a.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: k * n,
            found: a.rows() * a.cols(),
        });
    }
    let mb = m.basis();
    let nb = nn.basis();
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(mb.len() + nb.len());
    for v in mb {
        cols.push(a.mul_vec(&v[..n])?);
    }
    for v in nb {
        cols.push(v[..k].iter().map(|e| -e.clone()).collect());
    }
    if cols.is_empty() {
        return Ok(Subspace::zero(n));
    }
    let at = a.transpose();
    let system = Mat::from_cols(k, &cols)?;
    let points = matrix::nullspace_vectors(&system).into_iter().map(|kv| {
        let (alpha, beta) = kv.split_at(mb.len());
        let mut z = m.combine(alpha);
        let mut ystar = alloc::vec![Scalar::zero(); k];
        for (b, v) in beta.iter().zip(nb) {
            scalar::axpy(&mut ystar, b, &v[k..]);
        }
        let shift = at.mul_vec(&ystar).expect("shape n x m");
        for (zi, s) in z[n..].iter_mut().zip(shift) {
            *zi += s;
        }
        z
    });
    Subspace::from_vectors(n, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::Point;

    fn line(x: i64, y: i64) -> Subspace {
        Subspace::from_points(1, &[Point::from_i64(&[x], &[y])]).unwrap()
    }

    #[test]
    fn identity_plus_identity() {
        let id = line(1, 1);
        let s = sum_composition(&id, &id, &Mat::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(s, line(1, 2));
    }

    #[test]
    fn zero_maps_compose_to_zero() {
        let z = line(1, 0);
        assert_eq!(sum_composition(&z, &z, &Mat::from_i64(1, 1, &[3])).unwrap(), z);
    }

    #[test]
    fn zero_coupling_keeps_first_operand() {
        let id = line(1, 1);
        assert_eq!(sum_composition(&id, &id, &Mat::from_i64(1, 1, &[0])).unwrap(), id);
    }

    #[test]
    fn shape_is_checked() {
        let id = line(1, 1);
        assert!(sum_composition(&id, &id, &Mat::from_i64(1, 2, &[1, 1])).is_err());
    }
}
