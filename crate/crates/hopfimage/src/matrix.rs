//! Dense exact matrices and Gauss–Jordan elimination.
//!
//! Matrices are row-major over a single [`FieldSpec`]. The canonical reduced
//! row-echelon form normalizes pivots to 1, clears above and below, drops
//! zero rows, and keeps pivot columns strictly increasing, so two matrices
//! span the same row space iff their RREFs are structurally equal.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldSpec, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, field, entries }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, ncols)
    }

    /// Like `from_rows` but keeps the column count when the row list is
    /// empty.
    pub fn from_rows_with_cols(field: FieldSpec, rows: Vec<Vec<Scalar>>, ncols: usize) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row);
        }
        Matrix { rows: nrows, cols: ncols, field, entries }
    }

    /// 1×n row built from integer literals; test and fixture helper.
    pub fn row_i64(field: FieldSpec, vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|v| field.from_i64(*v)).collect()
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(field, rows.iter().map(|r| Self::row_i64(field, r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a.mul(s)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_same_field(other)?;
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "apply: {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[r] = out[r].add(&a.mul(x));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with left-factor-major index convention:
    /// row `(i, r) ↦ i·other.rows + r`, column likewise.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zero(rows, cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.rows {
                    for s in 0..other.cols {
                        let b = other.get(r, s);
                        if !b.is_zero() {
                            out.set(i * other.rows + r, j * other.cols + s, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack: {} vs {} columns",
                self.cols, other.cols
            )));
        }
        self.check_same_field(other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries })
    }

    /// Canonical reduced row-echelon form with zero rows dropped.
    pub fn rref(&self) -> Matrix {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row_vec(r)).collect();
        let rank = rref_in_place(&mut rows, self.cols);
        rows.truncate(rank);
        Matrix::from_rows_with_cols(self.field, rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Null space {v : self·v = 0} as a canonical RREF basis matrix
    /// (rows = basis vectors of length `cols`).
    pub fn kernel_basis(&self) -> Matrix {
        let r = self.rref();
        let pivots = pivot_columns(&r);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, f).neg();
            }
            basis.push(v);
        }
        Matrix::from_rows_with_cols(self.field, basis, self.cols).rref()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = self.row_vec(r);
            for c in 0..n {
                row.push(if r == c { self.field.one() } else { self.field.zero() });
            }
            rows.push(row);
        }
        let rank = rref_in_place(&mut rows, 2 * n);
        // invertible iff the pivots land exactly on the left block
        if rank != n || (0..n).any(|r| (0..n).position(|c| !rows[r][c].is_zero()) != Some(r)) {
            return None;
        }
        Some(Matrix::from_rows(self.field, rows.into_iter().take(n).map(|r| r[n..].to_vec()).collect()))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_same_field(other)
    }

    pub(crate) fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }
}

/// Columns holding the leading 1 of each row of an RREF matrix.
pub fn pivot_columns(rref: &Matrix) -> Vec<usize> {
    (0..rref.rows())
        .map(|r| {
            (0..rref.cols())
                .find(|&c| !rref.get(r, c).is_zero())
                .expect("RREF matrix has no zero rows")
        })
        .collect()
}

/// In-place Gauss–Jordan; returns the rank. Rows beyond the rank are zero.
pub(crate) fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv();
        for c in col..cols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let sub = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&sub);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// A sparse column: sorted (row index, nonzero value) pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Linear dependencies among the given columns: the null space of the matrix
/// whose j-th column is `cols[j]`, returned as a canonical RREF basis over
/// the column index space. Avoids materializing tall dense matrices.
pub fn kernel_of_columns(cols: &[SparseVec], field: FieldSpec) -> Matrix {
    let n = cols.len();
    // Echelon rows over the (sparse) ambient, each carrying the combination
    // of input columns that produced it.
    let mut pivots: Vec<(usize, SparseVec, Vec<Scalar>)> = Vec::new();
    let mut kernel_rows: Vec<Vec<Scalar>> = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut vec = col.clone();
        let mut comb = vec![field.zero(); n];
        comb[j] = field.one();
        loop {
            let Some(&(lead, _)) = vec.first() else {
                kernel_rows.push(comb);
                break;
            };
            match pivots.binary_search_by_key(&lead, |(l, _, _)| *l) {
                Ok(idx) => {
                    let factor = vec[0].1.clone();
                    let (_, ref pvec, ref pcomb) = pivots[idx];
                    vec = sparse_axpy(&vec, pvec, &factor.neg());
                    for (c, pc) in comb.iter_mut().zip(pcomb) {
                        *c = c.sub(&pc.mul(&factor));
                    }
                }
                Err(idx) => {
                    let inv = vec[0].1.inv();
                    for (_, v) in vec.iter_mut() {
                        *v = v.mul(&inv);
                    }
                    for c in comb.iter_mut() {
                        *c = c.mul(&inv);
                    }
                    pivots.insert(idx, (lead, vec, comb));
                    break;
                }
            }
        }
    }
    Matrix::from_rows_with_cols(field, kernel_rows, n).rref()
}

/// a + factor·b for sorted sparse vectors, dropping zeros.
fn sparse_axpy(a: &SparseVec, b: &SparseVec, factor: &Scalar) -> SparseVec {
    let mut out = SparseVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                let v = va.add(&vb.mul(factor));
                if !v.is_zero() {
                    out.push((*ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (Some(_), Some((ib, vb))) => {
                let v = vb.mul(factor);
                if !v.is_zero() {
                    out.push((*ib, v));
                }
                j += 1;
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                let v = vb.mul(factor);
                if !v.is_zero() {
                    out.push((*ib, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}
