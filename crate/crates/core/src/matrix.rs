//! Dense exact matrices: row reduction, kernels, range solves and the
//! inertia of symmetric forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = scalar::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Result<Self, Error> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    /// Convenience for tests and fixtures: integer entries, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&v| scalar::int(v)).collect())
            .expect("entry count matches shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| scalar::dot(self.row(i), v)).collect())
    }

    /// `vᵀ · self · w`
    pub fn bilinear(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        let mw = self.mul_vec(w).expect("shape checked by caller");
        scalar::dot(v, &mw)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with the pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                let d = &f * &a[(r, j)];
                a[(i, j)] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Basis of `{v : m·v = 0}`, returned as the columns of a `cols × k` matrix.
pub fn nullspace(m: &Mat) -> Mat {
    let basis = nullspace_vectors(m);
    let mut out = Mat::zeros(m.cols, basis.len());
    for (j, v) in basis.iter().enumerate() {
        for (i, e) in v.iter().enumerate() {
            out[(i, j)] = e.clone();
        }
    }
    out
}

/// Kernel basis as a list of vectors, one per free column.
pub fn nullspace_vectors(m: &Mat) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[free] = scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Solves `g·u = b` exactly, or reports that `b` is outside the range of `g`.
/// Free variables are set to zero.
pub fn solve_in_range(g: &Mat, b: &[Scalar]) -> Result<Vec<Scalar>, Error> {
    if b.len() != g.rows {
        return Err(Error::DimensionMismatch {
            expected: g.rows,
            found: b.len(),
        });
    }
    let mut aug = Mat::zeros(g.rows, g.cols + 1);
    for i in 0..g.rows {
        for j in 0..g.cols {
            aug[(i, j)] = g[(i, j)].clone();
        }
        aug[(i, g.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&g.cols) {
        return Err(Error::NotInRange);
    }
    let mut u = vec![Scalar::zero(); g.cols];
    for (row, &p) in pivots.iter().enumerate() {
        u[p] = r[(row, g.cols)].clone();
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }

    pub fn is_nsd(&self) -> bool {
        self.n_plus == 0
    }
}

/// A congruence diagonalization `Pᵀ·g·P = diag(values)`; `vectors` are the
/// columns of the invertible matrix `P`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub vectors: Vec<Vec<Scalar>>,
    pub values: Vec<Scalar>,
}

impl Diagonalization {
    pub fn inertia(&self) -> Inertia {
        let mut out = Inertia {
            n_plus: 0,
            n_zero: 0,
            n_minus: 0,
        };
        for v in &self.values {
            match scalar::sign(v) {
                1 => out.n_plus += 1,
                0 => out.n_zero += 1,
                _ => out.n_minus += 1,
            }
        }
        out
    }

    /// First column with a negative diagonal value.
    pub fn negative_direction(&self) -> Option<&[Scalar]> {
        self.values
            .iter()
            .position(Signed::is_negative)
            .map(|i| self.vectors[i].as_slice())
    }

    pub fn positive_direction(&self) -> Option<&[Scalar]> {
        self.values
            .iter()
            .position(Signed::is_positive)
            .map(|i| self.vectors[i].as_slice())
    }

    /// Columns spanning the radical of the form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.values
            .iter()
            .zip(&self.vectors)
            .filter(|(v, _)| v.is_zero())
            .map(|(_, p)| p.clone())
            .collect()
    }
}

/// Symmetric Gaussian elimination by congruence. A zero diagonal entry is
/// repaired by a symmetric swap with a later nonzero diagonal entry or, when
/// the remaining diagonal vanishes, by folding in the partner of a hyperbolic
/// pair (`e_i ← e_i + e_j` turns `[[0,a],[a,0]]` into a pivot `2a`).
pub fn diagonalize(g: &Mat) -> Result<Diagonalization, Error> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let k = g.rows;
    let mut a = g.clone();
    let mut p = Mat::identity(k);

    for i in 0..k {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..k).find(|&j| !a[(j, j)].is_zero()) {
                sym_swap(&mut a, &mut p, i, j);
            } else if let Some(j) = (i + 1..k).find(|&j| !a[(i, j)].is_zero()) {
                sym_add(&mut a, &mut p, i, j);
            } else {
                // row i is already zero
                continue;
            }
        }
        let pivot = a[(i, i)].clone();
        for r in i + 1..k {
            if a[(r, i)].is_zero() {
                continue;
            }
            let f = &a[(r, i)] / &pivot;
            // row_r -= f·row_i, then col_r -= f·col_i
            for c in 0..k {
                let d = &f * &a[(i, c)];
                a[(r, c)] -= d;
            }
            for c in 0..k {
                let d = &f * &a[(c, i)];
                a[(c, r)] -= d;
            }
            for c in 0..k {
                let d = &f * &p[(c, i)];
                p[(c, r)] -= d;
            }
        }
    }
    debug_assert!((0..k).all(|i| (0..k).all(|j| i == j || a[(i, j)].is_zero())));
    Ok(Diagonalization {
        vectors: p.columns(),
        values: (0..k).map(|i| a[(i, i)].clone()).collect(),
    })
}

fn sym_swap(a: &mut Mat, p: &mut Mat, i: usize, j: usize) {
    let k = a.rows;
    a.swap_rows(i, j);
    for r in 0..k {
        a.data.swap(r * k + i, r * k + j);
        p.data.swap(r * k + i, r * k + j);
    }
}

/// Congruence with `e_i ← e_i + e_j`.
fn sym_add(a: &mut Mat, p: &mut Mat, i: usize, j: usize) {
    let k = a.rows;
    for c in 0..k {
        let v = a[(j, c)].clone();
        a[(i, c)] += v;
    }
    for r in 0..k {
        let v = a[(r, j)].clone();
        a[(r, i)] += v;
    }
    for r in 0..k {
        let v = p[(r, j)].clone();
        p[(r, i)] += v;
    }
}

/// Exact inertia of a symmetric form.
pub fn inertia(g: &Mat) -> Result<Inertia, Error> {
    Ok(diagonalize(g)?.inertia())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Mat::from_i64(2, 2, &[0, 0, 0, 0]));
        assert!(r.is_zero());
        assert!(p.is_empty());

        let (r, p) = rref(&Mat::from_i64(2, 2, &[1, 2, 2, 4]));
        assert_eq!(r, Mat::from_i64(2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&Mat::from_i64(2, 2, &[0, 1, 1, 0]));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Mat::identity(2)).cols(), 0);
        assert_eq!(nullspace_vectors(&Mat::from_i64(1, 2, &[1, 1])), vec![vec![int(-1), int(1)]]);
        assert_eq!(nullspace_vectors(&Mat::from_i64(2, 2, &[1, 2, 2, 4])), vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn solve_in_range_examples() {
        assert_eq!(solve_in_range(&Mat::from_i64(1, 1, &[1]), &[int(3)]).unwrap(), vec![int(3)]);
        assert_eq!(solve_in_range(&Mat::from_i64(1, 1, &[0]), &[int(1)]), Err(Error::NotInRange));
        let g = Mat::from_i64(2, 2, &[2, 0, 0, 0]);
        let u = solve_in_range(&g, &[int(4), int(0)]).unwrap();
        assert_eq!(g.mul_vec(&u).unwrap(), vec![int(4), int(0)]);
        assert_eq!(u, vec![int(2), int(0)]);
    }

    #[test]
    fn inertia_examples() {
        let i3 = inertia(&Mat::identity(3)).unwrap();
        assert_eq!((i3.n_plus, i3.n_zero, i3.n_minus), (3, 0, 0));
        let h = inertia(&Mat::from_i64(2, 2, &[0, 1, 1, 0])).unwrap();
        assert_eq!((h.n_plus, h.n_zero, h.n_minus), (1, 0, 1));
        let z = inertia(&Mat::zeros(2, 2)).unwrap();
        assert_eq!((z.n_plus, z.n_zero, z.n_minus), (0, 2, 0));
        assert_eq!(inertia(&Mat::from_i64(2, 2, &[0, 1, 2, 0])), Err(Error::NotSymmetric));
    }

    #[test]
    fn diagonalization_is_a_congruence() {
        let g = Mat::from_i64(4, 4, &[0, 1, 0, 2, 1, 0, 3, 0, 0, 3, 0, 1, 2, 0, 1, 0]);
        let d = diagonalize(&g).unwrap();
        let p = Mat::from_cols(4, &d.vectors).unwrap();
        let pgp = p.transpose().mul(&g).unwrap().mul(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { d.values[i].clone() } else { int(0) };
                assert_eq!(pgp[(i, j)], expect);
            }
        }
        assert_eq!(rank(&p), 4);
    }
}
