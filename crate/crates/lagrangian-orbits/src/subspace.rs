//! Linear subspaces in a unique canonical form.
//!
//! Vectors are columns and a subspace is the span of the columns of its
//! basis matrix, stored in reduced column-echelon form (the transpose of the
//! reduced row-echelon form of the transposed spanning set). The canonical
//! basis is unique per subspace, so equality of subspaces is entry-wise
//! equality of basis matrices.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    /// ambient_dim x dim matrix in reduced column-echelon form.
    basis: Mat,
    /// Pivot row of each basis column, strictly increasing.
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}): {:?}", self.dim(), self.ambient_dim, self.basis)
    }
}

impl Subspace {
    /// Span of the columns of `vectors`, canonicalized.
    pub fn span(ambient_dim: usize, vectors: &Mat) -> Subspace {
        assert_eq!(vectors.rows(), ambient_dim, "ambient dimension mismatch");
        let (r, pivot_rows) = vectors.transpose().rref();
        let basis = r.submatrix(0..pivot_rows.len(), 0..ambient_dim).transpose();
        Subspace { field: vectors.field(), ambient_dim, basis, pivots: pivot_rows }
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace::span(ambient_dim, &Mat::zeros(field, ambient_dim, 0))
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace::span(ambient_dim, &Mat::identity(field, ambient_dim))
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(field: Field, ambient_dim: usize, indices: &[usize]) -> Subspace {
        let mut m = Mat::zeros(field, ambient_dim, indices.len());
        for (c, &i) in indices.iter().enumerate() {
            m.set(i, c, field.one());
        }
        Subspace::span(ambient_dim, &m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The canonical basis matrix (columns are basis vectors).
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the canonical basis; the result is zero iff v is a member.
    fn reduce_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (c, &pivot) in self.pivots.iter().enumerate() {
            if w[pivot].is_zero() {
                continue;
            }
            let coeff = w[pivot].clone();
            for r in 0..self.ambient_dim {
                if !self.basis.at(r, c).is_zero() {
                    w[r] = &w[r] - &(&coeff * self.basis.at(r, c));
                }
            }
        }
        w
    }

    pub fn member(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "member length mismatch");
        self.reduce_vector(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the canonical basis, or None if not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.member(v) {
            return None;
        }
        // pivot rows read the coefficients off directly
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|c| self.member(&other.basis.col(c)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(self.ambient_dim, &self.basis.hstack(&other.basis)))
    }

    /// Intersection via the stack-and-kernel construction: the kernel of
    /// [A | B] yields coefficient pairs (x, -y) with Ax = By.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        let stacked = self.basis.hstack(&other.basis);
        let ker = stacked.kernel_basis();
        let coeffs = ker.submatrix(0..self.dim(), 0..ker.cols());
        Ok(Subspace::span(self.ambient_dim, &(&self.basis * &coeffs)))
    }

    /// A deterministic complement of `self` inside `sup`: greedily keep the
    /// canonical basis columns of `sup` (lowest pivot first) that grow the span.
    pub fn complement_in(&self, sup: &Subspace) -> Result<Subspace> {
        self.check_compatible(sup)?;
        if !sup.contains(self) {
            return Err(Error::Containment("complement_in requires S to be contained in T".into()));
        }
        let mut working = self.clone();
        let mut chosen: Vec<usize> = Vec::new();
        for c in 0..sup.dim() {
            let v = sup.basis.col(c);
            if !working.member(&v) {
                chosen.push(c);
                working = working.sum(&Subspace::span(self.ambient_dim, &sup.basis.select_cols(&[c])))?;
            }
        }
        debug_assert_eq!(working, *sup);
        Ok(Subspace::span(self.ambient_dim, &sup.basis.select_cols(&chosen)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn span_rows(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, &Mat::from_i64_rows(Q, rows).transpose())
    }

    #[test]
    fn kernel_line_is_canonicalized() {
        // kernel of [1 2] is spanned by (-2, 1); canonical column is (1, -1/2)
        let m = Mat::from_i64_rows(Q, &[&[1, 2]]);
        let k = Subspace::span(2, &m.kernel_basis());
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().at(0, 0), &Q.from_i64(1));
        assert_eq!(k.basis().at(1, 0), &Q.parse("-1/2").unwrap());
        assert!(k.member(&[Q.from_i64(-2), Q.from_i64(1)]));
    }

    #[test]
    fn canonical_form_is_idempotent_and_unique() {
        let a = span_rows(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = span_rows(3, &[&[2, 2, 2], &[1, 1, -1]]);
        assert_eq!(a, b);
        let again = Subspace::span(3, a.basis());
        assert_eq!(a, again);
    }

    #[test]
    fn self_intersection_and_transverse_lines() {
        let a = span_rows(2, &[&[1, 0]]);
        let b = span_rows(2, &[&[0, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn intersection_of_shifted_planes() {
        // span{e1+e2, e3} and span{e1+e2, e4} in Q^4 meet in span{e1+e2}
        let a = span_rows(4, &[&[1, 1, 0, 0], &[0, 0, 1, 0]]);
        let b = span_rows(4, &[&[1, 1, 0, 0], &[0, 0, 0, 1]]);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet, span_rows(4, &[&[1, 1, 0, 0]]));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = span_rows(2, &[&[1, 0]]);
        let b = span_rows(3, &[&[1, 0, 0]]);
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn complement_edge_cases() {
        let t = span_rows(2, &[&[1, 0], &[0, 1]]);
        let zero = Subspace::zero(Q, 2);
        assert_eq!(zero.complement_in(&t).unwrap(), t);
        assert!(t.complement_in(&t).unwrap().is_zero());
    }

    #[test]
    fn complement_follows_greedy_pivot_rule() {
        // complement of span(e1+e2) in span{e1,e2}: the rule keeps e1
        let s = span_rows(2, &[&[1, 1]]);
        let t = Subspace::full(Q, 2);
        let c = s.complement_in(&t).unwrap();
        assert_eq!(c, span_rows(2, &[&[1, 0]]));
    }

    #[test]
    fn complement_requires_containment() {
        let s = span_rows(2, &[&[1, 1]]);
        let t = span_rows(2, &[&[1, 0]]);
        assert!(matches!(s.complement_in(&t), Err(Error::Containment(_))));
    }
}
