//! Finite-dimensional algebras, Hopf algebras, and their morphisms as
//! structure-constant data.
//!
//! An [`Algebra`] stores e_i·e_j = Σ_k m_{ij}^k e_k plus the unit vector; a
//! [`HopfAlgebra`] adds Δ, ε, S. All axioms are verified exhaustively over
//! basis tuples by [`check_algebra`] / [`check_hopf`] rather than assumed.
//! Tensor bases are ordered left-factor-major throughout.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{Matrix, SparseVec};
use crate::word::Word;

/// Sparse element of a tensor square, keyed by basis index pairs.
pub type PairTerms = BTreeMap<(usize, usize), Scalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    /// m_{ij}^k at ((i·dim)+j)·dim + k.
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(field: FieldSpec, dim: usize, mult: Vec<Scalar>, unit: Vec<Scalar>) -> Algebra {
        assert_eq!(mult.len(), dim * dim * dim, "mult tensor has wrong length");
        assert_eq!(unit.len(), dim, "unit vector has wrong length");
        Algebra { field, dim, mult, unit }
    }

    pub fn trivial(field: FieldSpec) -> Algebra {
        Algebra::new(field, 1, vec![field.one()], vec![field.one()])
    }

    /// Full matrix algebra M_k with basis E_{ab} at index a·k + b.
    pub fn matrix_algebra(k: usize, field: FieldSpec) -> Algebra {
        let dim = k * k;
        let mut mult = vec![field.zero(); dim * dim * dim];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        if b == c {
                            let (i, j, t) = (a * k + b, c * k + d, a * k + d);
                            mult[(i * dim + j) * dim + t] = field.one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for a in 0..k {
            unit[a * k + a] = field.one();
        }
        Algebra::new(field, dim, mult, unit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    #[inline]
    pub fn mult_entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    /// The structure-constant vector of e_i·e_j.
    #[inline]
    pub fn mult_row(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.mult[base..base + self.dim]
    }

    /// Raw structure-constant tensor, indexed ((i·dim)+j)·dim + k.
    pub fn mult_tensor(&self) -> &[Scalar] {
        &self.mult
    }

    /// Bilinear extension of the multiplication to coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, m) in self.mult_row(i, j).iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = out[k].add(&m.mul(&c));
                    }
                }
            }
        }
        out
    }

    /// Multiplication as a dim × dim² matrix, column (i·dim + j) = e_i·e_j.
    pub fn mult_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.dim * self.dim, self.field, |k, col| {
            self.mult_entry(col / self.dim, col % self.dim, k).clone()
        })
    }

    /// Left multiplication x ↦ e_a·x as a matrix.
    pub fn left_mult_matrix(&self, a: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.field, |k, j| self.mult_entry(a, j, k).clone())
    }

    /// Right multiplication x ↦ x·e_a as a matrix.
    pub fn right_mult_matrix(&self, a: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.field, |k, j| self.mult_entry(j, a, k).clone())
    }

    /// The opposite algebra: m_{ij}^k ↦ m_{ji}^k.
    pub fn opposite(&self) -> Algebra {
        let mut mult = vec![self.field.zero(); self.dim * self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    mult[(i * self.dim + j) * self.dim + k] = self.mult_entry(j, i, k).clone();
                }
            }
        }
        Algebra::new(self.field, self.dim, mult, self.unit.clone())
    }

    /// Tensor product with left-factor-major basis order.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut mult = vec![self.field.zero(); dim * dim * dim];
        for ia in 0..da {
            for ja in 0..da {
                for ka in 0..da {
                    let ma = self.mult_entry(ia, ja, ka);
                    if ma.is_zero() {
                        continue;
                    }
                    for ib in 0..db {
                        for jb in 0..db {
                            for kb in 0..db {
                                let mb = other.mult_entry(ib, jb, kb);
                                if mb.is_zero() {
                                    continue;
                                }
                                let (i, j, k) = (ia * db + ib, ja * db + jb, ka * db + kb);
                                mult[(i * dim + j) * dim + k] = ma.mul(mb);
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); dim];
        for (a, ua) in self.unit.iter().enumerate() {
            for (b, ub) in other.unit.iter().enumerate() {
                unit[a * db + b] = ua.mul(ub);
            }
        }
        Ok(Algebra::new(self.field, dim, mult, unit))
    }

    /// Direct product with componentwise operations; basis is the
    /// concatenation of the factor bases.
    pub fn direct_product(factors: &[&Algebra]) -> Result<Algebra> {
        let field = factors.first().map(|a| a.field).unwrap_or(FieldSpec::Rationals);
        for f in factors {
            if f.field != field {
                return Err(Error::FieldMismatch("direct product factors".into()));
            }
        }
        let dim: usize = factors.iter().map(|a| a.dim).sum();
        let mut mult = vec![field.zero(); dim * dim * dim];
        let mut unit = vec![field.zero(); dim];
        let mut offset = 0;
        for f in factors {
            for i in 0..f.dim {
                for j in 0..f.dim {
                    for k in 0..f.dim {
                        let m = f.mult_entry(i, j, k);
                        if !m.is_zero() {
                            let (i, j, k) = (offset + i, offset + j, offset + k);
                            mult[(i * dim + j) * dim + k] = m.clone();
                        }
                    }
                }
            }
            for (k, u) in f.unit.iter().enumerate() {
                unit[offset + k] = u.clone();
            }
            offset += f.dim;
        }
        Ok(Algebra::new(field, dim, mult, unit))
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                if self.mult_row(i, j) != self.mult_row(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: Algebra,
    /// Δ(e_j) = Σ_{k,l} comult[j·dim² + k·dim + l] e_k⊗e_l.
    comult: Vec<Scalar>,
    counit: Vec<Scalar>,
    /// Column j = S(e_j).
    antipode: Matrix,
}

impl HopfAlgebra {
    pub fn from_parts(
        algebra: Algebra,
        comult: Vec<Scalar>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> HopfAlgebra {
        let n = algebra.dim;
        assert_eq!(comult.len(), n * n * n, "comult tensor has wrong length");
        assert_eq!(counit.len(), n, "counit vector has wrong length");
        assert_eq!((antipode.rows(), antipode.cols()), (n, n), "antipode shape");
        HopfAlgebra { algebra, comult, counit, antipode }
    }

    pub fn trivial(field: FieldSpec) -> HopfAlgebra {
        HopfAlgebra::from_parts(
            Algebra::trivial(field),
            vec![field.one()],
            vec![field.one()],
            Matrix::identity(1, field),
        )
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        self.algebra.unit()
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// Raw comultiplication tensor, indexed j·dim² + k·dim + l.
    pub fn comult_tensor(&self) -> &[Scalar] {
        &self.comult
    }

    #[inline]
    pub fn comult_coeff(&self, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.algebra.dim;
        &self.comult[j * n * n + k * n + l]
    }

    /// Nonzero terms of Δ(e_j).
    pub fn comult_pairs(&self, j: usize) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        let n = self.algebra.dim;
        self.comult[j * n * n..(j + 1) * n * n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| ((idx / n, idx % n), c))
    }

    pub fn comult_of_vec(&self, x: &[Scalar]) -> PairTerms {
        let mut out = PairTerms::new();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for ((k, l), c) in self.comult_pairs(j) {
                add_pair_term(&mut out, (k, l), c.mul(xj));
            }
        }
        out
    }

    /// Δ as an n²×n matrix (rows = tensor-square basis, left-major).
    pub fn comult_matrix(&self) -> Matrix {
        let n = self.algebra.dim;
        Matrix::from_fn(n * n, n, self.field(), |row, j| {
            self.comult_coeff(j, row / n, row % n).clone()
        })
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                acc = acc.add(&xj.mul(&self.counit[j]));
            }
        }
        acc
    }

    pub fn antipode_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.antipode.apply(x).expect("antipode shape")
    }

    /// ker ε as a canonical subspace.
    pub fn augmentation_ideal(&self) -> crate::subspace::Subspace {
        let row = Matrix::from_rows(self.field(), vec![self.counit.clone()]);
        crate::subspace::Subspace::from_rows(&row.kernel_basis())
    }

    pub fn is_grouplike(&self, v: &[Scalar]) -> bool {
        if !self.counit_of(v).is_one() {
            return false;
        }
        let mut expected = PairTerms::new();
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    add_pair_term(&mut expected, (k, l), a.mul(b));
                }
            }
        }
        self.comult_of_vec(v) == expected
    }

    /// True when every basis vector is grouplike (group-algebra presentation).
    pub fn has_grouplike_basis(&self) -> bool {
        (0..self.dim()).all(|j| {
            let mut v = vec![self.field().zero(); self.dim()];
            v[j] = self.field().one();
            self.is_grouplike(&v)
        })
    }

    /// Tensor product Hopf algebra with the middle-swap comultiplication.
    pub fn tensor(&self, other: &HopfAlgebra) -> Result<HopfAlgebra> {
        let algebra = self.algebra.tensor(&other.algebra)?;
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let field = self.field();
        let mut comult = vec![field.zero(); dim * dim * dim];
        for ja in 0..da {
            for jb in 0..db {
                let j = ja * db + jb;
                for ((ka, la), ca) in self.comult_pairs(ja) {
                    for ((kb, lb), cb) in other.comult_pairs(jb) {
                        let (k, l) = (ka * db + kb, la * db + lb);
                        comult[j * dim * dim + k * dim + l] = ca.mul(cb);
                    }
                }
            }
        }
        let mut counit = vec![field.zero(); dim];
        for ja in 0..da {
            for jb in 0..db {
                counit[ja * db + jb] = self.counit[ja].mul(&other.counit[jb]);
            }
        }
        let antipode = self.antipode.kron(&other.antipode);
        Ok(HopfAlgebra::from_parts(algebra, comult, counit, antipode))
    }

    /// Opposite multiplication and co-opposite comultiplication; the antipode
    /// is unchanged and H^{op,cop} is again a Hopf algebra.
    pub fn op_cop(&self) -> HopfAlgebra {
        let n = self.dim();
        let algebra = self.algebra.opposite();
        let mut comult = vec![self.field().zero(); n * n * n];
        for j in 0..n {
            for ((k, l), c) in self.comult_pairs(j) {
                comult[j * n * n + l * n + k] = c.clone();
            }
        }
        HopfAlgebra::from_parts(algebra, comult, self.counit.clone(), self.antipode.clone())
    }

    /// The dual Hopf algebra on the dual basis: multiplication and
    /// comultiplication tensors transpose into each other, unit and counit
    /// swap, S transposes.
    pub fn dual(&self) -> HopfAlgebra {
        let n = self.dim();
        let field = self.field();
        let mut mult = vec![field.zero(); n * n * n];
        let mut comult = vec![field.zero(); n * n * n];
        for j in 0..n {
            for ((k, l), c) in self.comult_pairs(j) {
                // (e^k·e^l)(e_j) = Δ(e_j)[(k,l)]
                mult[(k * n + l) * n + j] = c.clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, m) in self.algebra.mult_row(i, j).iter().enumerate() {
                    if !m.is_zero() {
                        // Δ*(e^k)[(i,j)] = m_{ij}^k
                        comult[k * n * n + i * n + j] = m.clone();
                    }
                }
            }
        }
        let algebra = Algebra::new(field, n, mult, self.counit.clone());
        HopfAlgebra::from_parts(algebra, comult, self.algebra.unit.clone(), self.antipode.transpose())
    }

    /// Sparse columns of the iterated coproduct Δ^{(k)}: for each basis j the
    /// nonzero coefficients over the left-major flattened basis of H^{⊗k}.
    /// Δ^{(0)} = ε, Δ^{(1)} = id.
    pub fn iterated_columns(&self, k: usize) -> Vec<SparseVec> {
        let n = self.dim();
        (0..n).map(|j| self.iterated_column(k, j)).collect()
    }

    pub(crate) fn iterated_column(&self, k: usize, j: usize) -> SparseVec {
        match k {
            0 => {
                if self.counit[j].is_zero() {
                    Vec::new()
                } else {
                    vec![(0, self.counit[j].clone())]
                }
            }
            1 => vec![(j, self.field().one())],
            _ => {
                let n = self.dim();
                let stride = n.checked_pow((k - 1) as u32).expect("tensor index overflow");
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for ((a, b), c) in self.comult_pairs(j) {
                    for (sub, d) in self.iterated_column(k - 1, b) {
                        let idx = a * stride + sub;
                        let v = c.mul(&d);
                        match acc.get_mut(&idx) {
                            Some(e) => {
                                *e = e.add(&v);
                                if e.is_zero() {
                                    acc.remove(&idx);
                                }
                            }
                            None => {
                                acc.insert(idx, v);
                            }
                        }
                    }
                }
                acc.into_iter().collect()
            }
        }
    }

    /// Δ^{(k)} as a dense n^k × n matrix.
    pub fn iterated_coproduct(&self, k: usize) -> Matrix {
        let n = self.dim();
        let rows = n.checked_pow(k as u32).expect("tensor index overflow").max(1);
        let rows = if k == 0 { 1 } else { rows };
        let mut m = Matrix::zero(rows, n, self.field());
        for (j, col) in self.iterated_columns(k).into_iter().enumerate() {
            for (idx, c) in col {
                m.set(idx, j, c);
            }
        }
        m
    }

    /// Sparse columns of Δ^{(k)} followed by S on each starred leg.
    pub fn twisted_columns(&self, polarities: &[bool]) -> Vec<SparseVec> {
        let k = polarities.len();
        let n = self.dim();
        let s_cols: Vec<SparseVec> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&r| !self.antipode.get(r, j).is_zero())
                    .map(|r| (r, self.antipode.get(r, j).clone()))
                    .collect()
            })
            .collect();
        self.iterated_columns(k)
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (idx, c) in col {
                    // expand each starred leg through S
                    let legs = unflatten(idx, n, k);
                    let mut terms: Vec<(usize, Scalar)> = vec![(0, c)];
                    for (pos, &t) in legs.iter().enumerate() {
                        let mut next = Vec::new();
                        if polarities[pos] {
                            for (r, s) in &s_cols[t] {
                                for (base, coeff) in &terms {
                                    next.push((base * n + r, coeff.mul(s)));
                                }
                            }
                        } else {
                            for (base, coeff) in &terms {
                                next.push((base * n + t, coeff.clone()));
                            }
                        }
                        terms = next;
                    }
                    for (idx, v) in terms {
                        match acc.get_mut(&idx) {
                            Some(e) => {
                                *e = e.add(&v);
                                if e.is_zero() {
                                    acc.remove(&idx);
                                }
                            }
                            None => {
                                acc.insert(idx, v);
                            }
                        }
                    }
                }
                acc.into_iter().collect()
            })
            .collect()
    }

    /// Δ^{(|w|)} with the antipode applied on the starred legs of `w`, as a
    /// dense n^{|w|} × n matrix.
    pub fn twisted_coproduct(&self, w: &Word) -> Matrix {
        let polarities: Vec<bool> = w.letters().iter().map(|l| l.starred).collect();
        let n = self.dim();
        let k = polarities.len();
        let rows = if k == 0 { 1 } else { n.checked_pow(k as u32).expect("tensor index overflow") };
        let mut m = Matrix::zero(rows, n, self.field());
        if k == 0 {
            for j in 0..n {
                m.set(0, j, self.counit[j].clone());
            }
            return m;
        }
        for (j, col) in self.twisted_columns(&polarities).into_iter().enumerate() {
            for (idx, c) in col {
                m.set(idx, j, c);
            }
        }
        m
    }
}

pub(crate) fn unflatten(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut legs = vec![0usize; k];
    for pos in (0..k).rev() {
        legs[pos] = idx % n;
        idx /= n;
    }
    legs
}

pub(crate) fn add_pair_term(map: &mut PairTerms, key: (usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e = e.add(&v);
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, v);
        }
    }
}

/// Product of two sparse tensor-square elements, (a⊗b)(c⊗d) = ac⊗bd.
pub(crate) fn pair_product(alg: &Algebra, x: &PairTerms, y: &PairTerms) -> PairTerms {
    let mut out = PairTerms::new();
    for ((a, b), cx) in x {
        for ((c, d), cy) in y {
            let coeff = cx.mul(cy);
            for (k, m1) in alg.mult_row(*a, *c).iter().enumerate() {
                if m1.is_zero() {
                    continue;
                }
                for (l, m2) in alg.mult_row(*b, *d).iter().enumerate() {
                    if !m2.is_zero() {
                        add_pair_term(&mut out, (k, l), coeff.mul(&m1.mul(m2)));
                    }
                }
            }
        }
    }
    out
}

/// Either a plain algebra or a Hopf algebra, shared immutably.
#[derive(Debug, Clone)]
pub enum Carrier {
    Plain(Arc<Algebra>),
    Hopf(Arc<HopfAlgebra>),
}

impl Carrier {
    pub fn plain(a: Algebra) -> Carrier {
        Carrier::Plain(Arc::new(a))
    }

    pub fn hopf(h: HopfAlgebra) -> Carrier {
        Carrier::Hopf(Arc::new(h))
    }

    pub fn algebra(&self) -> &Algebra {
        match self {
            Carrier::Plain(a) => a,
            Carrier::Hopf(h) => h.algebra(),
        }
    }

    pub fn hopf_structure(&self) -> Option<&HopfAlgebra> {
        match self {
            Carrier::Plain(_) => None,
            Carrier::Hopf(h) => Some(h),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra().dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra().field()
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Carrier::Plain(a), Carrier::Plain(b)) => a == b,
            (Carrier::Hopf(a), Carrier::Hopf(b)) => a == b,
            _ => false,
        }
    }
}

/// A verified linear map of algebras: `matrix` is target_dim × source_dim,
/// sends unit to unit and respects multiplication on all basis pairs.
/// `is_hopf` additionally certifies Δ_target∘f = (f⊗f)∘Δ_source and
/// ε_target∘f = ε_source.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMorphism {
    source: Carrier,
    target: Carrier,
    matrix: Matrix,
    is_hopf: bool,
}

impl AlgebraMorphism {
    pub fn new(source: Carrier, target: Carrier, matrix: Matrix) -> Result<AlgebraMorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix {}x{} for map from dim {} to dim {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch("morphism endpoints".into()));
        }
        let mut m = AlgebraMorphism { source, target, matrix, is_hopf: false };
        m.verify_algebra_map()?;
        m.is_hopf = m.check_hopf_compat();
        Ok(m)
    }

    /// Skips verification; for maps whose defining construction already
    /// guarantees the morphism laws. `verify` re-checks on demand.
    pub(crate) fn new_unchecked(
        source: Carrier,
        target: Carrier,
        matrix: Matrix,
        is_hopf: bool,
    ) -> AlgebraMorphism {
        AlgebraMorphism { source, target, matrix, is_hopf }
    }

    pub fn identity(carrier: Carrier) -> AlgebraMorphism {
        let n = carrier.dim();
        let is_hopf = carrier.hopf_structure().is_some();
        let matrix = Matrix::identity(n, carrier.field());
        AlgebraMorphism { source: carrier.clone(), target: carrier, matrix, is_hopf }
    }

    /// ε as a morphism H → k.
    pub fn counit_morphism(h: &Arc<HopfAlgebra>) -> AlgebraMorphism {
        let field = h.field();
        let matrix = Matrix::from_rows(field, vec![h.counit().to_vec()]);
        AlgebraMorphism {
            source: Carrier::Hopf(h.clone()),
            target: Carrier::hopf(HopfAlgebra::trivial(field)),
            matrix,
            is_hopf: true,
        }
    }

    pub fn source(&self) -> &Carrier {
        &self.source
    }

    pub fn target(&self) -> &Carrier {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_hopf(&self) -> bool {
        self.is_hopf
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v).expect("morphism shape")
    }

    /// f∘g, requiring g.target == f.source dimensions.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let matrix = self.matrix.mul(&inner.matrix)?;
        Ok(AlgebraMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix,
            is_hopf: self.is_hopf && inner.is_hopf,
        })
    }

    /// Kronecker product morphism f⊗g; Hopf iff both factors are.
    pub fn tensor(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let source = tensor_carrier(&self.source, &other.source)?;
        let target = tensor_carrier(&self.target, &other.target)?;
        let matrix = self.matrix.kron(&other.matrix);
        Ok(AlgebraMorphism { source, target, matrix, is_hopf: self.is_hopf && other.is_hopf })
    }

    /// Stacked map into the direct product of the targets.
    pub fn direct_product(maps: &[&AlgebraMorphism]) -> Result<AlgebraMorphism> {
        assert!(!maps.is_empty());
        let source = maps[0].source.clone();
        for m in maps {
            if m.source != source {
                return Err(Error::DimensionMismatch("direct product over distinct sources".into()));
            }
        }
        let algebras: Vec<&Algebra> = maps.iter().map(|m| m.target.algebra()).collect();
        let target = Carrier::plain(Algebra::direct_product(&algebras)?);
        let mut matrix = maps[0].matrix.clone();
        for m in &maps[1..] {
            matrix = matrix.vstack(&m.matrix)?;
        }
        Ok(AlgebraMorphism { source, target, matrix, is_hopf: false })
    }

    /// Re-runs the unit/multiplicativity checks (and Hopf compatibility when
    /// flagged).
    pub fn verify(&self) -> Result<()> {
        self.verify_algebra_map()?;
        if self.is_hopf && !self.check_hopf_compat() {
            return Err(Error::AxiomViolation { axiom: "hopf-compatibility".into(), witness: vec![] });
        }
        Ok(())
    }

    fn verify_algebra_map(&self) -> Result<()> {
        let src = self.source.algebra();
        let tgt = self.target.algebra();
        let unit_img = self.apply(src.unit());
        if unit_img != tgt.unit() {
            return Err(Error::AxiomViolation { axiom: "morphism-unit".into(), witness: vec![] });
        }
        let cols: Vec<Vec<Scalar>> = (0..src.dim()).map(|j| self.matrix.col_vec(j)).collect();
        for i in 0..src.dim() {
            for j in 0..src.dim() {
                let lhs = self.apply(src.mult_row(i, j));
                let rhs = tgt.multiply(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(Error::AxiomViolation {
                        axiom: "morphism-multiplicative".into(),
                        witness: vec![i, j],
                    });
                }
            }
        }
        Ok(())
    }

    fn check_hopf_compat(&self) -> bool {
        let (Some(hs), Some(ht)) = (self.source.hopf_structure(), self.target.hopf_structure())
        else {
            return false;
        };
        for j in 0..hs.dim() {
            let img = self.matrix.col_vec(j);
            if ht.counit_of(&img) != hs.counit()[j] {
                return false;
            }
            let lhs = ht.comult_of_vec(&img);
            let mut rhs = PairTerms::new();
            for ((k, l), c) in hs.comult_pairs(j) {
                let fk = self.matrix.col_vec(k);
                let fl = self.matrix.col_vec(l);
                for (a, x) in fk.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in fl.iter().enumerate() {
                        if !y.is_zero() {
                            add_pair_term(&mut rhs, (a, b), c.mul(&x.mul(y)));
                        }
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

pub(crate) fn tensor_carrier(a: &Carrier, b: &Carrier) -> Result<Carrier> {
    match (a, b) {
        (Carrier::Hopf(x), Carrier::Hopf(y)) => Ok(Carrier::hopf(x.tensor(y)?)),
        _ => Ok(Carrier::plain(a.algebra().tensor(b.algebra())?)),
    }
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// First failing basis tuple in scan order, if any.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    pub infos: Vec<String>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, axiom: &'static str, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck { axiom, passed: witness.is_none(), witness });
    }
}

pub fn check_algebra(a: &Algebra) -> AxiomReport {
    check_algebra_with(a, exec::default_parallel())
}

fn check_algebra_with(a: &Algebra, par: bool) -> AxiomReport {
    let mut report = AxiomReport::default();
    report.push("associativity", associativity_witness(a, par));
    report.push("unit-law", unit_witness(a));
    report
}

/// Full Hopf axiom battery; failures carry the first offending basis tuple.
pub fn check_hopf(h: &HopfAlgebra) -> AxiomReport {
    check_hopf_with(h, exec::default_parallel())
}

/// Sequential variant of [`check_hopf`]; the benchmark suite compares the
/// two.
pub fn check_hopf_seq(h: &HopfAlgebra) -> AxiomReport {
    check_hopf_with(h, false)
}

fn check_hopf_with(h: &HopfAlgebra, par: bool) -> AxiomReport {
    let a = h.algebra();
    let n = h.dim();
    let mut report = check_algebra_with(a, par);

    report.push("coassociativity", coassociativity_witness(h, par));
    report.push("counit-law", counit_law_witness(h));
    report.push("comult-multiplicative", comult_morphism_witness(h, par));
    report.push("comult-unital", {
        let lhs = h.comult_of_vec(h.unit());
        let mut rhs = PairTerms::new();
        for (k, x) in h.unit().iter().enumerate() {
            for (l, y) in h.unit().iter().enumerate() {
                add_pair_term(&mut rhs, (k, l), x.mul(y));
            }
        }
        (lhs != rhs).then(Vec::new)
    });
    report.push("counit-multiplicative", counit_morphism_witness(h));
    report.push("antipode-law-left", antipode_witness(h, true));
    report.push("antipode-law-right", antipode_witness(h, false));
    report.push("antipode-invertible", (h.antipode.rank() != n).then(Vec::new));

    let s2 = h.antipode.mul(&h.antipode).expect("square");
    if s2 == Matrix::identity(n, h.field()) {
        report.infos.push("S^2 = id".into());
    } else {
        report.infos.push("S^2 != id".into());
    }
    report
}

fn associativity_witness(a: &Algebra, par: bool) -> Option<Vec<usize>> {
    let n = a.dim();
    let idx: Vec<usize> = (0..n).collect();
    let per_i = exec::map_collect(&idx, par, |&i| {
        for j in 0..n {
            for l in 0..n {
                let mut lhs = vec![a.field().zero(); n];
                for (k, c) in a.mult_row(i, j).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (s, m) in a.mult_row(k, l).iter().enumerate() {
                        if !m.is_zero() {
                            lhs[s] = lhs[s].add(&c.mul(m));
                        }
                    }
                }
                let mut rhs = vec![a.field().zero(); n];
                for (k, c) in a.mult_row(j, l).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (s, m) in a.mult_row(i, k).iter().enumerate() {
                        if !m.is_zero() {
                            rhs[s] = rhs[s].add(&c.mul(m));
                        }
                    }
                }
                if lhs != rhs {
                    return Some(vec![i, j, l]);
                }
            }
        }
        None
    });
    per_i.into_iter().flatten().next()
}

fn unit_witness(a: &Algebra) -> Option<Vec<usize>> {
    let n = a.dim();
    for j in 0..n {
        let mut e = vec![a.field().zero(); n];
        e[j] = a.field().one();
        if a.multiply(a.unit(), &e) != e || a.multiply(&e, a.unit()) != e {
            return Some(vec![j]);
        }
    }
    None
}

fn coassociativity_witness(h: &HopfAlgebra, par: bool) -> Option<Vec<usize>> {
    let n = h.dim();
    let idx: Vec<usize> = (0..n).collect();
    let per_j = exec::map_collect(&idx, par, |&j| {
        let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut rhs = lhs.clone();
        for ((k, l), c) in h.comult_pairs(j) {
            for ((k1, k2), d) in h.comult_pairs(k) {
                let v = c.mul(d);
                merge3(&mut lhs, (k1, k2, l), v);
            }
            for ((l1, l2), d) in h.comult_pairs(l) {
                let v = c.mul(d);
                merge3(&mut rhs, (k, l1, l2), v);
            }
        }
        (lhs != rhs).then(|| vec![j])
    });
    per_j.into_iter().flatten().next()
}

fn merge3(map: &mut BTreeMap<(usize, usize, usize), Scalar>, key: (usize, usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e = e.add(&v);
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, v);
        }
    }
}

fn counit_law_witness(h: &HopfAlgebra) -> Option<Vec<usize>> {
    let n = h.dim();
    for j in 0..n {
        let mut left = vec![h.field().zero(); n];
        let mut right = vec![h.field().zero(); n];
        for ((k, l), c) in h.comult_pairs(j) {
            left[l] = left[l].add(&c.mul(&h.counit[k]));
            right[k] = right[k].add(&c.mul(&h.counit[l]));
        }
        let mut e = vec![h.field().zero(); n];
        e[j] = h.field().one();
        if left != e || right != e {
            return Some(vec![j]);
        }
    }
    None
}

fn comult_morphism_witness(h: &HopfAlgebra, par: bool) -> Option<Vec<usize>> {
    let n = h.dim();
    let a = h.algebra();
    let deltas: Vec<PairTerms> = (0..n)
        .map(|j| {
            let mut e = vec![h.field().zero(); n];
            e[j] = h.field().one();
            h.comult_of_vec(&e)
        })
        .collect();
    let idx: Vec<usize> = (0..n).collect();
    let per_i = exec::map_collect(&idx, par, |&i| {
        for j in 0..n {
            let lhs = h.comult_of_vec(a.mult_row(i, j));
            let rhs = pair_product(a, &deltas[i], &deltas[j]);
            if lhs != rhs {
                return Some(vec![i, j]);
            }
        }
        None
    });
    per_i.into_iter().flatten().next()
}

fn counit_morphism_witness(h: &HopfAlgebra) -> Option<Vec<usize>> {
    let n = h.dim();
    if !h.counit_of(h.unit()).is_one() {
        return Some(vec![]);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = h.counit_of(h.algebra().mult_row(i, j));
            if lhs != h.counit[i].mul(&h.counit[j]) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

fn antipode_witness(h: &HopfAlgebra, s_on_left: bool) -> Option<Vec<usize>> {
    let n = h.dim();
    for j in 0..n {
        let mut acc = vec![h.field().zero(); n];
        for ((k, l), c) in h.comult_pairs(j) {
            let prod = if s_on_left {
                let sk = self_column(&h.antipode, k);
                let mut el = vec![h.field().zero(); n];
                el[l] = h.field().one();
                h.algebra().multiply(&sk, &el)
            } else {
                let sl = self_column(&h.antipode, l);
                let mut ek = vec![h.field().zero(); n];
                ek[k] = h.field().one();
                h.algebra().multiply(&ek, &sl)
            };
            for (s, p) in prod.iter().enumerate() {
                if !p.is_zero() {
                    acc[s] = acc[s].add(&c.mul(p));
                }
            }
        }
        let expected: Vec<Scalar> =
            h.unit().iter().map(|u| u.mul(&h.counit[j])).collect();
        if acc != expected {
            return Some(vec![j]);
        }
    }
    None
}

fn self_column(m: &Matrix, j: usize) -> Vec<Scalar> {
    m.col_vec(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn matrix_algebra_axioms() {
        let m2 = Algebra::matrix_algebra(2, FieldSpec::Rationals);
        assert!(check_algebra(&m2).all_passed());
        assert!(!m2.is_commutative());
    }

    #[test]
    fn trivial_hopf_passes() {
        let k = HopfAlgebra::trivial(FieldSpec::Rationals);
        assert!(check_hopf(&k).all_passed());
    }

    #[test]
    fn direct_product_axioms() {
        let q = FieldSpec::Rationals;
        let m2 = Algebra::matrix_algebra(2, q);
        let t = Algebra::trivial(q);
        let p = Algebra::direct_product(&[&t, &m2]).unwrap();
        assert_eq!(p.dim(), 5);
        assert!(check_algebra(&p).all_passed());
    }

    #[test]
    fn op_cop_passes_with_same_antipode() {
        let h = builtins::sweedler();
        let oc = h.op_cop();
        assert_eq!(oc.antipode(), h.antipode());
        assert!(check_hopf(&oc).all_passed());
    }

    #[test]
    fn opposite_is_involutive_and_fixes_commutative() {
        let s3 = builtins::group_s3();
        let a = s3.algebra();
        assert_eq!(a.opposite().opposite(), *a);
        let dual = s3.dual();
        assert!(dual.algebra().is_commutative());
        assert_eq!(dual.algebra().opposite(), *dual.algebra());
    }

    #[test]
    fn double_dual_is_structural_identity() {
        for h in [builtins::group_z2(), builtins::sweedler()] {
            assert_eq!(h.dual().dual(), h);
        }
    }

    #[test]
    fn iterated_coproduct_base_cases() {
        let h = builtins::group_z2();
        assert_eq!(h.iterated_coproduct(1), Matrix::identity(2, FieldSpec::Rationals));
        // Δ^{(3)}(t) = t⊗t⊗t for the grouplike generator
        let d3 = h.iterated_coproduct(3);
        let col = d3.col_vec(1);
        let idx = 1 * 4 + 1 * 2 + 1;
        for (i, v) in col.iter().enumerate() {
            assert_eq!(!v.is_zero(), i == idx);
        }
    }

    #[test]
    fn sweedler_coproduct_of_x() {
        // Δ(x) = x⊗1 + g⊗x in the basis {1, g, x, gx}
        let h = builtins::sweedler();
        let terms: Vec<((usize, usize), Scalar)> =
            h.comult_pairs(2).map(|(kl, c)| (kl, c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                ((1, 2), FieldSpec::Rationals.one()),
                ((2, 0), FieldSpec::Rationals.one())
            ]
        );
    }

    #[test]
    fn twisted_coproduct_matches_untwisted_without_stars() {
        let h = builtins::sweedler();
        let w = Word::from_indices(&[(0, false), (0, false)]);
        assert_eq!(h.twisted_coproduct(&w), h.iterated_coproduct(2));
    }

    #[test]
    fn twisted_coproduct_applies_antipode_on_starred_leg() {
        // (i i*) on kS3 sends a grouplike g to g⊗g^{-1}
        let h = builtins::group_s3();
        let w = Word::from_indices(&[(0, false), (0, true)]);
        let m = h.twisted_coproduct(&w);
        let table = builtins::s3_table();
        for g in 0..6 {
            let ginv = (0..6).find(|&j| table[g][j] == 0).unwrap();
            let col = m.col_vec(g);
            for (idx, v) in col.iter().enumerate() {
                assert_eq!(!v.is_zero(), idx == g * 6 + ginv, "g={g} idx={idx}");
            }
        }
    }

    #[test]
    fn starred_single_letter_on_involutive_group_is_identity_twist() {
        let h = builtins::group_z2();
        let starred = Word::from_indices(&[(0, true)]);
        assert_eq!(h.twisted_coproduct(&starred), Matrix::identity(2, FieldSpec::Rationals));
    }
}
