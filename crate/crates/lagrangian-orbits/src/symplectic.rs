//! Symplectic spaces, isotropic and Lagrangian predicates, perpendicular
//! spaces, and symplectic reduction with explicit section maps.
//!
//! The quotient of U-perp by an isotropic U is represented by a section: a
//! deterministically chosen complement of U inside U-perp. Statements about
//! the quotient become exact statements about section coordinates.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// An even-dimensional space with a nondegenerate antisymmetric form,
/// given by its Gram matrix G: the form is x^T G y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    field: Field,
    dim: usize,
    gram: Mat,
}

impl SymplecticSpace {
    pub fn new(gram: Mat) -> Result<SymplecticSpace> {
        if !gram.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let dim = gram.rows();
        if dim % 2 != 0 {
            return Err(Error::Shape("symplectic dimension must be even".into()));
        }
        if !gram.is_antisymmetric() {
            return Err(Error::Shape("Gram matrix must be antisymmetric".into()));
        }
        if gram.rank() != dim {
            return Err(Error::Shape("symplectic form must be nondegenerate".into()));
        }
        Ok(SymplecticSpace { field: gram.field(), dim, gram })
    }

    /// The standard space with basis e_1..e_n, f_1..f_n and form pairing
    /// e_i with f_i: the Gram matrix is [[0, I], [-I, 0]].
    pub fn standard(n: usize, field: Field) -> SymplecticSpace {
        let mut gram = Mat::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, field.one());
            gram.set(n + i, i, field.from_i64(-1));
        }
        SymplecticSpace { field, dim: 2 * n, gram }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn is_standard(&self) -> bool {
        self.gram == SymplecticSpace::standard(self.dim / 2, self.field).gram
    }

    /// The form evaluated on two vectors.
    pub fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        let mut acc = self.field.zero();
        for i in 0..self.dim {
            if !x[i].is_zero() && !gy[i].is_zero() {
                acc = &acc + &(&x[i] * &gy[i]);
            }
        }
        acc
    }

    /// U-perp = { v : form(v, u) = 0 for all u in U }.
    pub fn perp(&self, u: &Subspace) -> Subspace {
        assert_eq!(u.ambient_dim(), self.dim, "perp ambient mismatch");
        // rows of the constraint system are (G u_k)^T
        let constraints = (&u.basis().transpose() * &self.gram.transpose()).clone();
        Subspace::span(self.dim, &constraints.kernel_basis())
    }

    pub fn is_isotropic(&self, u: &Subspace) -> bool {
        let b = u.basis();
        let pairing = &(&b.transpose() * &self.gram) * b;
        pairing.is_zero()
    }

    pub fn is_lagrangian(&self, u: &Subspace) -> bool {
        let ans = self.is_isotropic(u) && 2 * u.dim() == self.dim;
        // all three characterizations must agree
        debug_assert_eq!(ans, self.perp(u) == *u);
        ans
    }

    /// Symplectic reduction by an isotropic subspace: U-perp/U realized on a
    /// deterministically chosen section, with the restricted form.
    pub fn reduce(&self, u: &Subspace) -> Result<ReducedSpace> {
        if !self.is_isotropic(u) {
            return Err(Error::NotIsotropic);
        }
        let uperp = self.perp(u);
        let section_space = u.complement_in(&uperp)?;
        let section = section_space.basis().clone();
        let reduced_gram = &(&section.transpose() * &self.gram) * &section;
        let reduced = SymplecticSpace::new(reduced_gram)?;
        Ok(ReducedSpace { parent: self.clone(), core: u.clone(), uperp, section, reduced })
    }

    /// Exact test for g^T G g = G.
    pub fn is_symplectic_map(&self, g: &Mat) -> bool {
        g.is_square() && g.rows() == self.dim && &(&g.transpose() * &self.gram) * g == self.gram
    }

    /// Exact test for the linearized condition X^T G + G X = 0.
    pub fn in_sp_lie_algebra(&self, x: &Mat) -> bool {
        x.is_square()
            && x.rows() == self.dim
            && (&(&x.transpose() * &self.gram) + &(&self.gram * x)).is_zero()
    }

    /// A basis of the symplectic Lie algebra: G^{-1} S over a basis of
    /// symmetric matrices S (since X^T G + G X = 0 iff G X is symmetric).
    pub fn sp_basis(&self) -> Vec<Mat> {
        let ginv = self.gram.inverse().expect("nondegenerate");
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut s = Mat::zeros(self.field, n, n);
                s.set(i, j, self.field.one());
                if i != j {
                    s.set(j, i, self.field.one());
                }
                let x = &ginv * &s;
                debug_assert!(self.in_sp_lie_algebra(&x));
                out.push(x);
            }
        }
        out
    }

    /// Extends an isotropic subspace to a symplectic basis: returns T with
    /// T^T G T = G_std and T e_k = (k-th basis vector of U) for k < dim U.
    /// Requires the space to be in standard form.
    pub fn symplectic_basis_through(&self, u: &Subspace) -> Result<Mat> {
        assert!(self.is_standard(), "basis extension assumes the standard form");
        if !self.is_isotropic(u) {
            return Err(Error::NotIsotropic);
        }
        let n = self.half_dim();
        let mut a_vecs: Vec<Vec<Scalar>> = Vec::new();
        let mut b_vecs: Vec<Vec<Scalar>> = Vec::new();

        // project x into the symplectic complement of the placed pairs
        let project = |x: &[Scalar], a_vecs: &[Vec<Scalar>], b_vecs: &[Vec<Scalar>]| {
            let mut w = x.to_vec();
            for (a, b) in a_vecs.iter().zip(b_vecs) {
                let wa = self.form(a, &w);
                let wb = self.form(b, &w);
                // w := w + form(b, w) a - form(a, w) b
                for i in 0..self.dim {
                    w[i] = &(&w[i] + &(&wb * &a[i])) - &(&wa * &b[i]);
                }
            }
            w
        };

        let std_basis: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![self.field.zero(); self.dim];
                v[i] = self.field.one();
                v
            })
            .collect();

        let place_pair = |a: Vec<Scalar>, a_vecs: &mut Vec<Vec<Scalar>>, b_vecs: &mut Vec<Vec<Scalar>>| {
            for cand in &std_basis {
                let w = project(cand, a_vecs, b_vecs);
                let s = self.form(&a, &w);
                if !s.is_zero() {
                    let inv = s.inv();
                    let b: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
                    a_vecs.push(a);
                    b_vecs.push(b);
                    return;
                }
            }
            panic!("no symplectic partner found; form degenerate?");
        };

        for c in 0..u.dim() {
            let a = project(&u.basis().col(c), &a_vecs, &b_vecs);
            assert!(a.iter().any(|x| !x.is_zero()), "isotropic basis collapsed");
            place_pair(a, &mut a_vecs, &mut b_vecs);
        }
        while a_vecs.len() < n {
            let a = std_basis
                .iter()
                .map(|v| project(v, &a_vecs, &b_vecs))
                .find(|w| w.iter().any(|x| !x.is_zero()))
                .expect("cannot complete symplectic basis");
            place_pair(a, &mut a_vecs, &mut b_vecs);
        }

        let t = Mat::from_fn(self.field, self.dim, self.dim, |r, c| {
            if c < n { a_vecs[c][r].clone() } else { b_vecs[c - n][r].clone() }
        });
        assert!(self.is_symplectic_map(&t), "basis extension left the group");
        debug_assert!({
            let first = t.select_cols(&(0..u.dim()).collect::<Vec<_>>());
            Subspace::span(self.dim, &first) == *u
        });
        Ok(t)
    }
}

/// A symplectic reduction U-perp/U with its section data.
#[derive(Debug, Clone)]
pub struct ReducedSpace {
    parent: SymplecticSpace,
    core: Subspace,
    uperp: Subspace,
    /// Columns: the chosen complement of U inside U-perp.
    section: Mat,
    reduced: SymplecticSpace,
}

impl ReducedSpace {
    pub fn parent(&self) -> &SymplecticSpace {
        &self.parent
    }

    pub fn core(&self) -> &Subspace {
        &self.core
    }

    pub fn core_perp(&self) -> &Subspace {
        &self.uperp
    }

    pub fn section(&self) -> &Mat {
        &self.section
    }

    pub fn reduced(&self) -> &SymplecticSpace {
        &self.reduced
    }

    pub fn dim(&self) -> usize {
        self.reduced.dim()
    }

    /// Reduced coordinates of a vector in U-perp: write v = U a + S c and
    /// return c.
    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.uperp.member(v) {
            return Err(Error::NotMember);
        }
        let stacked = self.core.basis().hstack(&self.section);
        let x = stacked.solve(v).expect("v in U-perp must decompose");
        Ok(x[self.core.dim()..].to_vec())
    }

    /// The section representative of reduced coordinates.
    pub fn lift(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.section.apply(c)
    }

    /// Image of a subspace S with U <= S <= U-perp in the reduced space.
    pub fn push_subspace(&self, s: &Subspace) -> Result<Subspace> {
        if !s.contains(&self.core) || !self.uperp.contains(s) {
            return Err(Error::Containment("push_subspace needs U <= S <= U-perp".into()));
        }
        let mut cols = Mat::zeros(self.parent.field(), self.dim(), s.dim());
        for c in 0..s.dim() {
            let p = self.project(&s.basis().col(c))?;
            for r in 0..self.dim() {
                cols.set(r, c, p[r].clone());
            }
        }
        let out = Subspace::span(self.dim(), &cols);
        debug_assert_eq!(out.dim(), s.dim() - self.core.dim());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn coord(space: &SymplecticSpace, indices: &[usize]) -> Subspace {
        Subspace::coordinate(Q, space.dim(), indices)
    }

    fn span_rows(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, &Mat::from_i64_rows(Q, rows).transpose())
    }

    #[test]
    fn standard_gram_matrices() {
        let v1 = SymplecticSpace::standard(1, Q);
        assert_eq!(*v1.gram(), Mat::from_i64_rows(Q, &[&[0, 1], &[-1, 0]]));
        let v0 = SymplecticSpace::standard(0, Q);
        assert_eq!(v0.dim(), 0);
        let v2 = SymplecticSpace::standard(2, Q);
        // form(e2, f2) = 1 in the 4x4 block layout
        let e2 = vec![Q.from_i64(0), Q.from_i64(1), Q.from_i64(0), Q.from_i64(0)];
        let f2 = vec![Q.from_i64(0), Q.from_i64(0), Q.from_i64(0), Q.from_i64(1)];
        assert_eq!(v2.form(&e2, &f2), Q.from_i64(1));
    }

    #[test]
    fn perp_of_a_line_is_itself_in_dim_two() {
        let v = SymplecticSpace::standard(1, Q);
        let e1 = coord(&v, &[0]);
        assert_eq!(v.perp(&e1), e1);
        let full = Subspace::full(Q, 2);
        assert!(v.perp(&full).is_zero());
    }

    #[test]
    fn perp_in_dim_four() {
        let v = SymplecticSpace::standard(2, Q);
        // span(e1)^perp = span{e1, e2, f2}
        let e1 = coord(&v, &[0]);
        assert_eq!(v.perp(&e1), coord(&v, &[0, 1, 3]));
    }

    #[test]
    fn lagrangian_predicates() {
        let v = SymplecticSpace::standard(2, Q);
        assert!(v.is_lagrangian(&coord(&v, &[0, 1])));
        assert!(!v.is_isotropic(&coord(&v, &[0, 2])));
        // span{e1+f2, e2+f1} is Lagrangian
        let u = span_rows(4, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        assert!(v.is_lagrangian(&u));
    }

    #[test]
    fn reduction_by_zero_is_the_space_itself() {
        let v = SymplecticSpace::standard(2, Q);
        let r = v.reduce(&Subspace::zero(Q, 4)).unwrap();
        assert_eq!(r.reduced(), &v);
    }

    #[test]
    fn reduction_of_standard_four_space() {
        let v = SymplecticSpace::standard(2, Q);
        let r = v.reduce(&coord(&v, &[0])).unwrap();
        // section is (e2, f2) under the greedy rule, so the reduced gram is standard
        assert_eq!(r.dim(), 2);
        assert_eq!(*r.reduced().gram(), Mat::from_i64_rows(Q, &[&[0, 1], &[-1, 0]]));
        assert_eq!(*r.section(), Subspace::coordinate(Q, 4, &[1, 3]).basis().clone());
    }

    #[test]
    fn reduction_to_zero_dim() {
        let v = SymplecticSpace::standard(1, Q);
        let r = v.reduce(&coord(&v, &[0])).unwrap();
        assert_eq!(r.dim(), 0);
    }

    #[test]
    fn reduce_rejects_non_isotropic() {
        let v = SymplecticSpace::standard(1, Q);
        assert!(matches!(v.reduce(&Subspace::full(Q, 2)), Err(Error::NotIsotropic)));
    }

    #[test]
    fn project_lift_round_trip() {
        let v = SymplecticSpace::standard(2, Q);
        let r = v.reduce(&coord(&v, &[0])).unwrap();
        for k in 0..r.dim() {
            let mut c = vec![Q.from_i64(0); r.dim()];
            c[k] = Q.from_i64(1);
            assert_eq!(r.project(&r.lift(&c)).unwrap(), c);
        }
    }

    #[test]
    fn push_subspace_examples() {
        let v = SymplecticSpace::standard(2, Q);
        let u = coord(&v, &[0]);
        let r = v.reduce(&u).unwrap();
        assert!(r.push_subspace(&u).unwrap().is_zero());
        // span{e1, e2} pushes to the span of reduced e2 (first section coordinate)
        let s = coord(&v, &[0, 1]);
        let p = r.push_subspace(&s).unwrap();
        assert_eq!(p, Subspace::coordinate(Q, 2, &[0]));
    }

    #[test]
    fn project_requires_membership() {
        let v = SymplecticSpace::standard(1, Q);
        let r = v.reduce(&coord(&v, &[0])).unwrap();
        // f1 is not in span(e1)^perp = span(e1)
        let f1 = vec![Q.from_i64(0), Q.from_i64(1)];
        assert!(matches!(r.project(&f1), Err(Error::NotMember)));
    }

    #[test]
    fn symplectic_map_checks() {
        let v = SymplecticSpace::standard(1, Q);
        assert!(v.is_symplectic_map(&Mat::identity(Q, 2)));
        assert!(v.in_sp_lie_algebra(&Mat::zeros(Q, 2, 2)));
        // diag(2, 1/2) preserves the pairing
        let mut d = Mat::zeros(Q, 2, 2);
        d.set(0, 0, Q.from_i64(2));
        d.set(1, 1, Q.parse("1/2").unwrap());
        assert!(v.is_symplectic_map(&d));
        // the identity violates the Lie algebra identity
        assert!(!v.in_sp_lie_algebra(&Mat::identity(Q, 2)));
    }

    #[test]
    fn sp_basis_has_the_right_dimension() {
        for n in 1..=3 {
            let v = SymplecticSpace::standard(n, Q);
            assert_eq!(v.sp_basis().len(), n * (2 * n + 1));
        }
    }

    #[test]
    fn basis_extension_through_isotropic() {
        let v = SymplecticSpace::standard(2, Q);
        let u = span_rows(4, &[&[1, 1, 0, 0]]);
        let t = v.symplectic_basis_through(&u).unwrap();
        assert!(v.is_symplectic_map(&t));
        let first = Subspace::span(4, &t.select_cols(&[0]));
        assert_eq!(first, u);
    }
}
