//! Seeded sampling of rational grid points.
//!
//! Probes draw coordinates from the grid `{k/4 : |k/4| ≤ radius}` so every
//! sampled point is an exact rational and exact predicates stay exact.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pairing::Point;
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

pub const GRID_DENOMINATOR: i64 = 4;

/// Parameters of a sampled (Probed-tier) check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbePlan {
    pub seed: u64,
    pub samples: usize,
    pub grid_radius: Scalar,
}

impl Default for ProbePlan {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            grid_radius: scalar::int(4),
        }
    }
}

pub struct GridSampler {
    rng: ChaCha8Rng,
    steps: i64,
}

impl GridSampler {
    pub fn new(seed: u64, radius: &Scalar) -> Self {
        let scaled = (radius * scalar::int(GRID_DENOMINATOR)).floor();
        let steps = scaled.to_integer().to_i64().unwrap_or(i64::MAX / 2).max(1);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            steps,
        }
    }

    pub fn from_plan(plan: &ProbePlan) -> Self {
        Self::new(plan.seed, &plan.grid_radius)
    }

    pub fn scalar(&mut self) -> Scalar {
        let k = self.rng.gen_range(-self.steps..=self.steps);
        Scalar::new(BigInt::from(k), BigInt::from(GRID_DENOMINATOR))
    }

    pub fn vector(&mut self, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar()).collect()
    }

    pub fn point(&mut self, n: usize) -> Point {
        Point::from_flat(&self.vector(2 * n)).expect("even length")
    }

    /// A point of `s` with grid coefficients in its canonical basis.
    pub fn point_in(&mut self, s: &Subspace) -> Point {
        let coeffs = self.vector(s.dim());
        Point::from_flat(&s.combine(&coeffs)).expect("even length")
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn samples_are_reproducible_and_bounded() {
        let r = scalar::int(2);
        let mut a = GridSampler::new(7, &r);
        let mut b = GridSampler::new(7, &r);
        for _ in 0..200 {
            let v = a.scalar();
            assert_eq!(v, b.scalar());
            assert!(v.abs() <= r);
            assert!((&v * scalar::int(4)).is_integer());
        }
    }
}
