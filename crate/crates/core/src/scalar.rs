//! Exact rational scalars.
//!
//! Every certified quantity in this crate is a [`Scalar`], an arbitrary
//! precision rational kept in lowest terms with a positive denominator.
//! `Display` already prints the canonical `p/q` form (or `p` when `q = 1`).

use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Scalar = BigRational;

/// The integer `v` as a scalar.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// The reduced fraction `p / q`.
///
/// Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"` or `"p"` into a reduced scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let trimmed = text.trim();
    let bad = || Error::Parse {
        what: alloc::format!("rational `{trimmed}`"),
    };
    if trimmed.is_empty() {
        return Err(bad());
    }
    match trimmed.split_once('/') {
        None => BigInt::from_str(trimmed)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign(v: &Scalar) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Scalar::zero(), |acc, (u, v)| acc + u * v)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(u, v)| u - v).collect()
}

pub fn scale_vec(t: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|u| t * u).collect()
}

/// `acc += t * v`
pub fn axpy(acc: &mut [Scalar], t: &Scalar, v: &[Scalar]) {
    if t.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += t * b;
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Scales `v` so that its first nonzero entry equals one. Zero vectors are
/// returned unchanged.
pub fn projective_normal(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|e| !e.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.recip();
            scale_vec(&inv, v)
        }
    }
}

/// Rough float value, used only for reporting and by the float oracles.
pub fn to_f64(v: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}
