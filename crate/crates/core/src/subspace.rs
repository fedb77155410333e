//! Linear subspaces of `Z = ℝ²ⁿ` in canonical form.
//!
//! A subspace is stored as the reduced row-echelon form of its spanning
//! vectors (rows of length `2n`), so two subspaces are equal exactly when
//! their stored bases are equal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{self, Mat};
use crate::pairing::Point;
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of flat vectors of length `2n`.
    pub fn from_vectors<I>(n: usize, vectors: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let vectors: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        let m = Mat::from_rows(2 * n, &vectors)?;
        let (r, pivots) = matrix::rref(&m);
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Self { n, rows, pivots })
    }

    pub fn from_points(n: usize, points: &[Point]) -> Result<Self, Error> {
        for p in points {
            if p.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        Self::from_vectors(n, points.iter().map(Point::to_flat))
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(n: usize) -> Self {
        let rows = (0..2 * n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); 2 * n];
                v[i] = scalar::one();
                v
            })
            .collect();
        Self {
            n,
            rows,
            pivots: (0..2 * n).collect(),
        }
    }

    /// Graph `{(x, A·x)}` of a square matrix.
    pub fn graph(a: &Mat) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let vectors = (0..n).map(|j| {
            let mut v = vec![Scalar::zero(); 2 * n];
            v[j] = scalar::one();
            for i in 0..n {
                v[n + i] = a[(i, j)].clone();
            }
            v
        });
        Self::from_vectors(n, vectors)
    }

    /// Dimension of the underlying space `X` (the ambient space is `2n`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis vectors in flat form.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis_points(&self) -> Vec<Point> {
        self.rows
            .iter()
            .map(|r| Point::from_flat(r).expect("even length"))
            .collect()
    }

    /// The `2n × k` matrix whose columns are the canonical basis.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_cols(2 * self.n, &self.rows).expect("rows have length 2n")
    }

    /// `Σ coeffs[i] · basis[i]`
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); 2 * self.n];
        for (c, r) in coeffs.iter().zip(&self.rows) {
            scalar::axpy(&mut out, c, r);
        }
        out
    }

    /// Coordinates of `v` in the canonical basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != 2 * self.n {
            return None;
        }
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.combine(&coeffs) == v {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_flat(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, z: &Point) -> bool {
        z.n() == self.n && self.contains_flat(&z.to_flat())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains_flat(r))
    }

    /// Sum `self + other`.
    pub fn join(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::from_vectors(self.n, self.rows.iter().chain(&other.rows).cloned())
            .expect("same ambient dimension")
    }

    pub fn with_vector(&self, v: Vec<Scalar>) -> Self {
        Self::from_vectors(self.n, self.rows.iter().cloned().chain(core::iter::once(v)))
            .expect("vector has length 2n")
    }

    pub fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let k = self.dim();
        // columns [B_self | -B_other]; kernel vectors give common points
        let cols: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|r| r.iter().map(|v| -v.clone()).collect()))
            .collect();
        if cols.is_empty() {
            return Self::zero(self.n);
        }
        let m = Mat::from_cols(2 * self.n, &cols).expect("columns have length 2n");
        let vectors = matrix::nullspace_vectors(&m)
            .into_iter()
            .map(|kv| self.combine(&kv[..k]));
        Self::from_vectors(self.n, vectors).expect("length 2n")
    }

    /// `−A = {(x, −y) : (x, y) ∈ A}`
    pub fn flip_dual(&self) -> Self {
        let n = self.n;
        let vectors = self.rows.iter().map(|r| {
            r.iter()
                .enumerate()
                .map(|(i, v)| if i >= n { -v.clone() } else { v.clone() })
                .collect()
        });
        Self::from_vectors(n, vectors).expect("length 2n")
    }

    /// Projection onto the first factor `X`, as a subspace of `ℝⁿ`
    /// described by its dimension.
    pub fn x_projection_rank(&self) -> usize {
        let xs: Vec<Vec<Scalar>> = self.rows.iter().map(|r| r[..self.n].to_vec()).collect();
        matrix::rank(&Mat::from_rows(self.n, &xs).expect("length n"))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, p) in self.basis_points().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}} in n={}", self.n)
    }
}
