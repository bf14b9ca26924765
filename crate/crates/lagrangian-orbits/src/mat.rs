//! Dense exact matrices and Gaussian elimination.
//!
//! Row-major storage, cubic elimination throughout. Matrices are immutable
//! values; every operation returns a fresh matrix.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).encode()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.field(), field, "entry field mismatch");
                entries.push(v);
            }
        }
        Mat { field, rows, cols, entries }
    }

    /// Builds a rational matrix from integer rows; handy in tests and constructions.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Mat { field, rows, cols, entries })
    }

    /// Column vector from scalars.
    pub fn col_vector(field: Field, v: &[Scalar]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |r, _| v[r].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        assert_eq!(self.field, rhs.field);
        Mat::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols { self.at(r, c).clone() } else { rhs.at(r, c - self.cols).clone() }
        })
    }

    /// Vertical concatenation [self; rhs].
    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "vstack col mismatch");
        assert_eq!(self.field, rhs.field);
        Mat::from_fn(self.field, self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows { self.at(r, c).clone() } else { rhs.at(r - self.rows, c).clone() }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.at(rows.start + r, cols.start + c).clone()
        })
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, cols.len(), |r, c| self.at(r, cols[c]).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..=r).all(|c| self.at(r, c) == &-self.at(c, r)))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc = &acc + &(self.at(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero entry at or below `row`
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = m.at(row, col).inv();
            for c in 0..m.cols {
                let v = m.at(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c) - &(&factor * m.at(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : Mx = 0}, as columns. Not canonicalized.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, self.field.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, -r.at(prow, fc));
            }
        }
        basis
    }

    /// Any exact solution of self * x = b, or None.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "solve length mismatch");
        let aug = self.hstack(&Mat::col_vector(self.field, b));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        assert_eq!(self.field, rhs.field);
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c) + &(a * b);
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| -self.at(r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_identity_is_fixed() {
        let m = Mat::identity(Q, 2);
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64_rows(Q, &[&[2, 4], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_i64_rows(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_mod_three() {
        let f3 = Field::prime(3).unwrap();
        let m = Mat::from_i64_rows(f3, &[&[1, 1], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::identity(f3, 2));
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let z = Mat::zeros(Q, 2, 2);
        assert_eq!(z.kernel_basis().cols(), 2);
        let id = Mat::identity(Q, 2);
        assert_eq!(id.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_annihilates() {
        let m = Mat::from_i64_rows(Q, &[&[1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn solve_and_no_solution() {
        let m = Mat::from_i64_rows(Q, &[&[1, 0], &[0, 0]]);
        let b = vec![Q.from_i64(3), Q.from_i64(0)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let b2 = vec![Q.from_i64(0), Q.from_i64(1)];
        assert!(m.solve(&b2).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_i64_rows(Q, &[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(Q, 2));
        let sing = Mat::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }
}
