//! Subspaces of a based vector space in canonical form.
//!
//! A [`Subspace`] stores the RREF basis of its row space, so structural
//! equality of bases decides subspace equality and kernel-chain
//! stabilization is a plain `==`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{pivot_columns, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the rows of `m` inside k^cols.
    pub fn from_rows(m: &Matrix) -> Subspace {
        Subspace { ambient_dim: m.cols(), basis: m.rref() }
    }

    pub fn zero(ambient_dim: usize, field: FieldSpec) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::zero(0, ambient_dim, field) }
    }

    pub fn full(ambient_dim: usize, field: FieldSpec) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim, field) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// Canonical RREF basis, rows = basis vectors.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let stacked = self
            .basis
            .vstack(&Matrix::from_rows(self.field(), vec![v.to_vec()]))
            .expect("same ambient");
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_rows(&stacked))
    }

    /// Intersection by the Zassenhaus block construction: reduce
    /// `[A | A; B | 0]`; rows with zero left half carry the intersection in
    /// their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let field = self.field();
        if self.basis.field() != other.basis.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.basis.field(),
                other.basis.field()
            )));
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim() + other.dim());
        for r in 0..self.dim() {
            let mut row = self.basis.row_vec(r);
            row.extend(self.basis.row(r).iter().cloned());
            rows.push(row);
        }
        for r in 0..other.dim() {
            let mut row = other.basis.row_vec(r);
            row.extend(std::iter::repeat_with(|| field.zero()).take(n));
            rows.push(row);
        }
        let block = Matrix::from_rows(field, rows).rref();
        let mut inter_rows = Vec::new();
        for r in 0..block.rows() {
            if (0..n).all(|c| block.get(r, c).is_zero()) {
                inter_rows.push(block.row(r)[n..].to_vec());
            }
        }
        Ok(Subspace::from_rows(&Matrix::from_rows_with_cols(field, inter_rows, n)))
    }

    /// Span of pairwise Kronecker products a⊗b inside k^(n·m); used for
    /// subspaces of tensor squares such as J⊗H.
    pub fn kron(&self, other: &Subspace) -> Subspace {
        let field = self.field();
        let m = other.ambient_dim;
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                let a = self.basis.row(i);
                let b = other.basis.row(j);
                let mut row = Vec::with_capacity(self.ambient_dim * m);
                for x in a {
                    for y in b {
                        row.push(x.mul(y));
                    }
                }
                rows.push(row);
            }
        }
        Subspace::from_rows(&Matrix::from_rows_with_cols(field, rows, self.ambient_dim * m))
    }

    /// Projection onto the complement spanned by the standard basis vectors
    /// at the non-pivot columns of this subspace's RREF basis.
    ///
    /// Returns `(projection, complement)` with `projection` of shape
    /// `(n−dim)×n`, `ker projection = self`, and `projection ∘ inclusion`
    /// the identity on the complement (rows of `complement` are the
    /// standard basis vectors e_f at free columns f, in ascending order).
    pub fn quotient_basis(&self) -> (Matrix, Matrix) {
        let n = self.ambient_dim;
        let field = self.field();
        let pivots = pivot_columns(&self.basis);
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|c| !is_pivot[*c]).collect();
        let mut proj = Matrix::zero(free.len(), n, field);
        let mut compl = Matrix::zero(free.len(), n, field);
        for (row, &f) in free.iter().enumerate() {
            proj.set(row, f, field.one());
            for (i, &p) in pivots.iter().enumerate() {
                proj.set(row, p, self.basis.get(i, f).neg());
            }
            compl.set(row, f, field.one());
        }
        (proj, compl)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn span(rows: &[&[i64]], ambient: usize) -> Subspace {
        if rows.is_empty() {
            return Subspace::zero(ambient, Q);
        }
        Subspace::from_rows(&Matrix::from_i64_rows(Q, rows))
    }

    #[test]
    fn intersect_is_idempotent() {
        let a = span(&[&[1, 2, 0], &[0, 0, 1]], 3);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn intersect_of_coordinate_lines_is_zero() {
        let e1 = span(&[&[1, 0]], 2);
        let e2 = span(&[&[0, 1]], 2);
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn intersect_of_coordinate_planes() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(a.intersect(&b).unwrap(), span(&[&[0, 1, 0]], 3));
    }

    #[test]
    fn sum_of_complementary_planes_is_full() {
        let a = span(&[&[1, 0, 0]], 3);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3, Q));
    }

    #[test]
    fn contains_scaled_vector() {
        let d = span(&[&[1, 1]], 2);
        assert!(d.contains_vector(&Matrix::row_i64(Q, &[2, 2])));
        assert!(!d.contains_vector(&Matrix::row_i64(Q, &[1, 2])));
    }

    #[test]
    fn quotient_of_zero_subspace_is_identity() {
        let z = Subspace::zero(3, Q);
        let (proj, compl) = z.quotient_basis();
        assert_eq!(proj, Matrix::identity(3, Q));
        assert_eq!(compl, Matrix::identity(3, Q));
    }

    #[test]
    fn quotient_projection_kills_subspace_and_fixes_complement() {
        let s = span(&[&[1, 2, 3], &[0, 1, 1]], 3);
        let (proj, compl) = s.quotient_basis();
        assert_eq!(proj.rows(), 1);
        for r in 0..s.dim() {
            let img = proj.apply(s.basis().row(r)).unwrap();
            assert!(img.iter().all(Scalar::is_zero));
        }
        let pc = proj.mul(&compl.transpose()).unwrap();
        assert_eq!(pc, Matrix::identity(1, Q));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = span(&[&[1, 0]], 2);
        let b = span(&[&[1, 0, 0]], 3);
        assert!(matches!(
            a.intersect(&b),
            Err(Error::AmbientMismatch { expected: 2, found: 3 })
        ));
    }
}
