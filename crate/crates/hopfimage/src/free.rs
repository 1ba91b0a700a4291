//! Truncated free products of augmented algebras.
//!
//! The basis consists of reduced alternating words of length ≤ L in
//! designated unit-line complements of the factors; multiplication
//! concatenates and reduces at junctions, splitting factor products into
//! their unit coefficient plus complement part. Operations whose exact
//! result would need words longer than L fail with `TruncationOverflow`
//! instead of projecting, since silent projection would fake zeros in
//! separation verdicts.
//!
//! For families π_i on H this module also builds the maps
//! η_i = id * π_i on kℤ₂ * H, the word maps η_**i**, and the two embeddings
//! (H ∋ x ↦ σxσ and H*K ⊂ (H⊗K)*(H⊗K)) that reduce free-product
//! separation to the kℤ₂ case.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, Carrier, HopfAlgebra};
use crate::builtins;
use crate::error::{Error, Result};
use crate::faithful::{
    common_kernel, largest_hopf_ideal, tensor_family, Limits, MorphismFamily,
};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::word::{enumerate_words_up_to, Word};

/// (factor index, complement basis index)
pub type FpLetter = (u8, u16);
pub type FpWord = Vec<FpLetter>;

/// A free-product factor with a designated complement of its unit line.
#[derive(Debug, Clone)]
pub struct FreeFactor {
    algebra: Arc<Algebra>,
    hopf: Option<Arc<HopfAlgebra>>,
    /// Rows = complement basis vectors in factor coordinates.
    complement: Matrix,
    /// decompose·v = (unit coefficient, complement coordinates…).
    decompose: Matrix,
}

impl FreeFactor {
    /// Hopf factor with the canonical complement ker ε.
    pub fn hopf(h: Arc<HopfAlgebra>) -> FreeFactor {
        let complement = h.augmentation_ideal().basis().clone();
        Self::assemble(Arc::new(h.algebra().clone()), Some(h), complement)
    }

    /// Hopf factor whose basis is grouplike with the unit as a basis vector;
    /// the complement is spanned by the non-unit basis vectors, so letters
    /// multiply exactly like group elements.
    pub fn grouplike(h: Arc<HopfAlgebra>) -> Result<FreeFactor> {
        if !h.has_grouplike_basis() {
            return Err(Error::InvalidInput("factor basis is not grouplike".into()));
        }
        let n = h.dim();
        let field = h.field();
        let unit_index = (0..n)
            .find(|&i| {
                let mut e = vec![field.zero(); n];
                e[i] = field.one();
                e == h.unit()
            })
            .ok_or_else(|| Error::InvalidInput("unit is not a basis vector".into()))?;
        let mut complement = Matrix::zero(n - 1, n, field);
        let mut row = 0;
        for i in 0..n {
            if i != unit_index {
                complement.set(row, i, field.one());
                row += 1;
            }
        }
        Ok(Self::assemble(Arc::new(h.algebra().clone()), Some(h), complement))
    }

    /// Plain factor with the RREF-completed complement of the unit line.
    pub fn plain(a: Arc<Algebra>) -> FreeFactor {
        let unit_line = crate::subspace::Subspace::from_rows(&Matrix::from_rows(
            a.field(),
            vec![a.unit().to_vec()],
        ));
        let (_, complement) = unit_line.quotient_basis();
        Self::assemble(a, None, complement)
    }

    pub fn from_carrier(c: &Carrier) -> FreeFactor {
        match c {
            Carrier::Hopf(h) => FreeFactor::hopf(h.clone()),
            Carrier::Plain(a) => FreeFactor::plain(a.clone()),
        }
    }

    fn assemble(algebra: Arc<Algebra>, hopf: Option<Arc<HopfAlgebra>>, complement: Matrix) -> FreeFactor {
        let n = algebra.dim();
        assert_eq!(complement.rows(), n - 1, "complement must have codimension 1");
        let mut stacked = Matrix::from_rows(algebra.field(), vec![algebra.unit().to_vec()]);
        stacked = stacked.vstack(&complement).expect("same width");
        let decompose = stacked
            .transpose()
            .inverse()
            .expect("unit line and complement must span the factor");
        FreeFactor { algebra, hopf, complement, decompose }
    }

    pub fn letter_count(&self) -> usize {
        self.complement.rows()
    }

    pub fn letter_vector(&self, i: usize) -> &[Scalar] {
        self.complement.row(i)
    }

    /// v = λ·unit + Σ μ_i·letter_i.
    fn split(&self, v: &[Scalar]) -> (Scalar, Vec<Scalar>) {
        let w = self.decompose.apply(v).expect("factor dimension");
        let (lambda, rest) = w.split_first().expect("nonempty");
        (lambda.clone(), rest.to_vec())
    }
}

/// Sparse element over the truncated basis.
pub type SparseElem = Vec<(usize, Scalar)>;

/// Sparse element of the tensor square, keyed by basis index pairs.
pub type FpPairs = BTreeMap<(usize, usize), Scalar>;

pub struct TruncatedFreeProduct {
    factors: Vec<FreeFactor>,
    bound: usize,
    field: FieldSpec,
    basis: Vec<FpWord>,
    index: HashMap<FpWord, usize>,
    product_memo: Mutex<HashMap<(usize, usize), Arc<SparseElem>>>,
}

impl std::fmt::Debug for TruncatedFreeProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedFreeProduct")
            .field("factors", &self.factors.len())
            .field("bound", &self.bound)
            .field("basis", &self.basis.len())
            .finish()
    }
}

impl TruncatedFreeProduct {
    pub fn build(factors: Vec<FreeFactor>, bound: usize) -> Result<Arc<TruncatedFreeProduct>> {
        let field = factors
            .first()
            .map(|f| f.algebra.field())
            .ok_or_else(|| Error::InvalidInput("free product needs at least one factor".into()))?;
        for f in &factors {
            if f.algebra.field() != field {
                return Err(Error::FieldMismatch("free product factors".into()));
            }
        }
        let mut basis: Vec<FpWord> = vec![Vec::new()];
        let mut last_layer: Vec<FpWord> = vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &last_layer {
                let last_factor = w.last().map(|l| l.0);
                for (fi, f) in factors.iter().enumerate() {
                    if last_factor == Some(fi as u8) {
                        continue;
                    }
                    for i in 0..f.letter_count() {
                        let mut v = w.clone();
                        v.push((fi as u8, i as u16));
                        next.push(v);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            last_layer = next;
            if basis.len() > 4_000_000 {
                return Err(Error::ResourceCap { needed: basis.len(), cap: 4_000_000 });
            }
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(Arc::new(TruncatedFreeProduct {
            factors,
            bound,
            field,
            basis,
            index,
            product_memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn factors(&self) -> &[FreeFactor] {
        &self.factors
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_word(&self, idx: usize) -> &FpWord {
        &self.basis[idx]
    }

    pub fn word_index(&self, w: &FpWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Serialized word form "0:e1 1:e0"; the empty word serializes as "".
    pub fn word_string(&self, idx: usize) -> String {
        self.basis[idx]
            .iter()
            .map(|(f, i)| format!("{f}:e{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_word(&self, s: &str) -> Result<usize> {
        let mut w = FpWord::new();
        for tok in s.split_whitespace() {
            let (f, e) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad free-product letter {tok:?}")))?;
            let f: u8 = f.parse().map_err(|_| Error::Parse(format!("bad factor in {tok:?}")))?;
            let i: u16 = e
                .strip_prefix('e')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad letter index in {tok:?}")))?;
            w.push((f, i));
        }
        self.word_index(&w)
            .ok_or_else(|| Error::Parse(format!("word {s:?} is not a reduced basis word within the bound")))
    }

    fn all_hopf(&self) -> Result<()> {
        if self.factors.iter().any(|f| f.hopf.is_none()) {
            return Err(Error::InvalidInput("operation needs all factors to be Hopf".into()));
        }
        Ok(())
    }

    /// Product of two basis words, reduced and memoized. Overflow is raised
    /// exactly when a word that cannot reduce any further would exceed the
    /// bound, so products like (st)(ts) = 1 stay defined at tight bounds.
    pub fn basis_product(&self, u: usize, v: usize) -> Result<Arc<SparseElem>> {
        if let Some(hit) = self.product_memo.lock().unwrap().get(&(u, v)) {
            return Ok(hit.clone());
        }
        let result = Arc::new(self.reduce_product(u, v)?);
        self.product_memo.lock().unwrap().insert((u, v), result.clone());
        Ok(result)
    }

    fn reduce_product(&self, u: usize, v: usize) -> Result<SparseElem> {
        let wu = &self.basis[u];
        let wv = &self.basis[v];
        if wu.is_empty() {
            return Ok(vec![(v, self.field.one())]);
        }
        if wv.is_empty() {
            return Ok(vec![(u, self.field.one())]);
        }
        let total = wu.len() + wv.len();
        let last = *wu.last().unwrap();
        let first = wv[0];
        if last.0 != first.0 {
            if total > self.bound {
                return Err(Error::TruncationOverflow { needed: total, bound: self.bound });
            }
            let mut joined = wu.clone();
            joined.extend_from_slice(wv);
            let idx = self.index[&joined];
            return Ok(vec![(idx, self.field.one())]);
        }
        let factor = &self.factors[last.0 as usize];
        let prod = factor.algebra.multiply(
            factor.letter_vector(last.1 as usize),
            factor.letter_vector(first.1 as usize),
        );
        let (lambda, coords) = factor.split(&prod);
        let left: FpWord = wu[..wu.len() - 1].to_vec();
        let right: FpWord = wv[1..].to_vec();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        if !lambda.is_zero() {
            let li = self.index[&left];
            let ri = self.index[&right];
            for (idx, c) in self.basis_product(li, ri)?.iter() {
                merge_term(&mut acc, *idx, lambda.mul(c));
            }
        }
        for (i, mu) in coords.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            if total - 1 > self.bound {
                return Err(Error::TruncationOverflow { needed: total - 1, bound: self.bound });
            }
            let mut word = left.clone();
            word.push((last.0, i as u16));
            word.extend_from_slice(&right);
            merge_term(&mut acc, self.index[&word], mu.clone());
        }
        Ok(acc.into_iter().collect())
    }

    pub fn mul_sparse(&self, x: &SparseElem, y: &SparseElem) -> Result<SparseElem> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (u, cu) in x {
            for (v, cv) in y {
                let c = cu.mul(cv);
                for (idx, w) in self.basis_product(*u, *v)?.iter() {
                    merge_term(&mut acc, *idx, c.mul(w));
                }
            }
        }
        Ok(acc.into_iter().collect())
    }

    pub fn counit_word(&self, idx: usize) -> Result<Scalar> {
        self.all_hopf()?;
        let mut acc = self.field.one();
        for (f, i) in &self.basis[idx] {
            let factor = &self.factors[*f as usize];
            let h = factor.hopf.as_ref().unwrap();
            acc = acc.mul(&h.counit_of(factor.letter_vector(*i as usize)));
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn counit_sparse(&self, x: &SparseElem) -> Result<Scalar> {
        let mut acc = self.field.zero();
        for (idx, c) in x {
            acc = acc.add(&c.mul(&self.counit_word(*idx)?));
        }
        Ok(acc)
    }

    /// A factor element as a length ≤ 1 sparse free-product element.
    fn factor_element(&self, f: usize, v: &[Scalar]) -> SparseElem {
        let factor = &self.factors[f];
        let (lambda, coords) = factor.split(v);
        let mut out = SparseElem::new();
        if !lambda.is_zero() {
            out.push((0, lambda));
        }
        for (i, mu) in coords.into_iter().enumerate() {
            if !mu.is_zero() {
                let idx = self.index[&vec![(f as u8, i as u16)]];
                out.push((idx, mu));
            }
        }
        out
    }

    /// Δ of a basis word: the product of the letter coproducts in the tensor
    /// square; every tensor leg has length ≤ the word length.
    pub fn coproduct_word(&self, idx: usize) -> Result<FpPairs> {
        self.all_hopf()?;
        let mut acc = FpPairs::new();
        acc.insert((0, 0), self.field.one());
        let word = self.basis[idx].clone();
        for (f, i) in word {
            let factor = &self.factors[f as usize];
            let h = factor.hopf.as_ref().unwrap().clone();
            let mut letter_cop = Vec::new();
            for ((k, l), c) in h.comult_of_vec(factor.letter_vector(i as usize)) {
                let mut ek = vec![self.field.zero(); factor.algebra.dim()];
                ek[k] = self.field.one();
                let mut el = vec![self.field.zero(); factor.algebra.dim()];
                el[l] = self.field.one();
                let a = self.factor_element(f as usize, &ek);
                let b = self.factor_element(f as usize, &el);
                for (ia, ca) in &a {
                    for (ib, cb) in &b {
                        letter_cop.push(((*ia, *ib), c.mul(&ca.mul(cb))));
                    }
                }
            }
            let mut letter_pairs = FpPairs::new();
            for (key, c) in letter_cop {
                merge_pair(&mut letter_pairs, key, c);
            }
            acc = self.pair_mul(&acc, &letter_pairs)?;
        }
        Ok(acc)
    }

    pub fn coproduct_sparse(&self, x: &SparseElem) -> Result<FpPairs> {
        let mut acc = FpPairs::new();
        for (idx, c) in x {
            for (key, v) in self.coproduct_word(*idx)? {
                merge_pair(&mut acc, key, c.mul(&v));
            }
        }
        Ok(acc)
    }

    pub fn pair_mul(&self, a: &FpPairs, b: &FpPairs) -> Result<FpPairs> {
        let mut out = FpPairs::new();
        for ((a1, b1), c1) in a {
            for ((a2, b2), c2) in b {
                let c = c1.mul(c2);
                for (ia, ca) in self.basis_product(*a1, *a2)?.iter() {
                    for (ib, cb) in self.basis_product(*b1, *b2)?.iter() {
                        merge_pair(&mut out, (*ia, *ib), c.mul(&ca.mul(cb)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// S(x_1…x_m) = S(x_m)…S(x_1); the antipode preserves word length.
    pub fn antipode_word(&self, idx: usize) -> Result<SparseElem> {
        self.all_hopf()?;
        let mut acc: SparseElem = vec![(0, self.field.one())];
        for (f, i) in self.basis[idx].iter().rev() {
            let factor = &self.factors[*f as usize];
            let h = factor.hopf.as_ref().unwrap();
            let img = h.antipode_of(factor.letter_vector(*i as usize));
            let elem = self.factor_element(*f as usize, &img);
            acc = self.mul_sparse(&acc, &elem)?;
        }
        Ok(acc)
    }

    pub fn antipode_sparse(&self, x: &SparseElem) -> Result<SparseElem> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, c) in x {
            for (i, v) in self.antipode_word(*idx)? {
                merge_term(&mut acc, i, c.mul(&v));
            }
        }
        Ok(acc.into_iter().collect())
    }
}

fn merge_term(map: &mut BTreeMap<usize, Scalar>, idx: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&idx) {
        Some(e) => {
            *e = e.add(&v);
            if e.is_zero() {
                map.remove(&idx);
            }
        }
        None => {
            map.insert(idx, v);
        }
    }
}

fn merge_pair(map: &mut FpPairs, key: (usize, usize), v: Scalar) {
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

/// Dense element of a truncated free product.
#[derive(Debug, Clone)]
pub struct FPElement {
    pub parent: Arc<TruncatedFreeProduct>,
    pub coords: Vec<Scalar>,
}

impl FPElement {
    pub fn zero(parent: Arc<TruncatedFreeProduct>) -> FPElement {
        let coords = vec![parent.field().zero(); parent.basis_len()];
        FPElement { parent, coords }
    }

    pub fn from_terms(parent: Arc<TruncatedFreeProduct>, terms: &[(usize, Scalar)]) -> FPElement {
        let mut e = FPElement::zero(parent);
        for (idx, c) in terms {
            e.coords[*idx] = e.coords[*idx].add(c);
        }
        e
    }

    pub fn sparse(&self) -> SparseElem {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Maximum reduced-word length in the support.
    pub fn support_length(&self) -> usize {
        self.sparse()
            .iter()
            .map(|(i, _)| self.parent.basis_word(*i).len())
            .max()
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &FPElement) -> Result<FPElement> {
        assert!(Arc::ptr_eq(&self.parent, &other.parent), "elements of different free products");
        let prod = self.parent.mul_sparse(&self.sparse(), &other.sparse())?;
        Ok(FPElement::from_terms(self.parent.clone(), &prod))
    }

    pub fn add(&self, other: &FPElement) -> FPElement {
        assert!(Arc::ptr_eq(&self.parent, &other.parent));
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        FPElement { parent: self.parent.clone(), coords }
    }

    pub fn sub(&self, other: &FPElement) -> FPElement {
        assert!(Arc::ptr_eq(&self.parent, &other.parent));
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.sub(b))
            .collect();
        FPElement { parent: self.parent.clone(), coords }
    }

    /// Serialization form: (word string, scalar string) pairs in basis order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.sparse()
            .into_iter()
            .map(|(i, c)| (self.parent.word_string(i), c.to_canonical_string()))
            .collect()
    }
}

/// The image of a factor element inside the free product: its unit part
/// plus its complement coordinates as single-letter words.
pub fn inject_factor(fp: &Arc<TruncatedFreeProduct>, f: usize, v: &[Scalar]) -> FPElement {
    let terms = fp.factor_element(f, v);
    FPElement::from_terms(fp.clone(), &terms)
}

/// kℤ₂ as a free-product factor with the group generator σ as its letter.
pub fn z2_sigma_factor(field: FieldSpec) -> FreeFactor {
    let h = Arc::new(builtins::group_algebra(&builtins::z2_table(), field).expect("valid table"));
    FreeFactor::grouplike(h).expect("group basis")
}

/// The truncated kℤ₂ * H with the σ factor first and ker ε letters for H.
pub fn z2_free_product(h: &Arc<HopfAlgebra>, bound: usize) -> Result<Arc<TruncatedFreeProduct>> {
    TruncatedFreeProduct::build(
        vec![z2_sigma_factor(h.field()), FreeFactor::hopf(h.clone())],
        bound,
    )
}

/// Letterwise free product of unital algebra maps between truncated free
/// products: letters of source factor f map through `legs[f]` into target
/// factor `legs[f].0`, with re-reduction. Word length never increases.
#[derive(Debug, Clone)]
pub struct FreeMap {
    source: Arc<TruncatedFreeProduct>,
    target: Arc<TruncatedFreeProduct>,
    legs: Vec<(usize, Matrix)>,
}

impl FreeMap {
    pub fn new(
        source: Arc<TruncatedFreeProduct>,
        target: Arc<TruncatedFreeProduct>,
        legs: Vec<(usize, Matrix)>,
    ) -> Result<FreeMap> {
        if legs.len() != source.factors().len() {
            return Err(Error::DimensionMismatch("one leg map per source factor".into()));
        }
        if target.bound() < source.bound() {
            return Err(Error::TruncationOverflow { needed: source.bound(), bound: target.bound() });
        }
        for (f, (tf, m)) in legs.iter().enumerate() {
            let src_alg = &source.factors()[f].algebra;
            let tgt_alg = &target.factors()[*tf].algebra;
            if m.rows() != tgt_alg.dim() || m.cols() != src_alg.dim() {
                return Err(Error::DimensionMismatch(format!("leg {f} matrix shape")));
            }
            if m.apply(src_alg.unit())? != tgt_alg.unit() {
                return Err(Error::AxiomViolation { axiom: "leg-unit".into(), witness: vec![f] });
            }
        }
        Ok(FreeMap { source, target, legs })
    }

    pub fn source(&self) -> &Arc<TruncatedFreeProduct> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedFreeProduct> {
        &self.target
    }

    fn letter_image(&self, f: usize, i: usize) -> SparseElem {
        let (tf, m) = &self.legs[f];
        let v = m
            .apply(self.source.factors()[f].letter_vector(i))
            .expect("leg shape");
        self.target.factor_element(*tf, &v)
    }

    pub fn apply_word(&self, idx: usize) -> Result<SparseElem> {
        let mut acc: SparseElem = vec![(0, self.target.field().one())];
        for (f, i) in self.source.basis_word(idx).clone() {
            let img = self.letter_image(f as usize, i as usize);
            acc = self.target.mul_sparse(&acc, &img)?;
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn apply_sparse(&self, x: &SparseElem) -> Result<SparseElem> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, c) in x {
            for (i, v) in self.apply_word(*idx)? {
                merge_term(&mut acc, i, c.mul(&v));
            }
        }
        Ok(acc.into_iter().collect())
    }

    pub fn apply(&self, x: &FPElement) -> Result<FPElement> {
        assert!(Arc::ptr_eq(&x.parent, &self.source));
        let img = self.apply_sparse(&x.sparse())?;
        Ok(FPElement::from_terms(self.target.clone(), &img))
    }

    /// Dense matrix over the truncated bases; used for rank checks.
    pub fn matrix(&self) -> Result<Matrix> {
        let mut m = Matrix::zero(self.target.basis_len(), self.source.basis_len(), self.source.field());
        for j in 0..self.source.basis_len() {
            for (i, c) in self.apply_word(j)? {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

/// The family η_i = id * π_i on the truncated kℤ₂ * H.
#[derive(Debug)]
pub struct Z2Family {
    pub source: Arc<TruncatedFreeProduct>,
    pub maps: Vec<FreeMap>,
}

/// Builds η_i: kℤ₂*H → kℤ₂*A_i for every map of the family, all truncated at
/// `bound`. The construction only needs the source Hopf structure; the
/// family's own Hopf flag is what the permanence theorems require, not the
/// construction.
pub fn z2_family(fam: &MorphismFamily, bound: usize) -> Result<Z2Family> {
    let field = fam.domain().field();
    let source = z2_free_product(fam.domain(), bound)?;
    let mut maps = Vec::with_capacity(fam.len());
    for m in fam.maps() {
        let target = TruncatedFreeProduct::build(
            vec![z2_sigma_factor(field), FreeFactor::from_carrier(m.target())],
            bound,
        )?;
        maps.push(FreeMap::new(
            source.clone(),
            target,
            vec![(0, Matrix::identity(2, field)), (1, m.matrix().clone())],
        )?);
    }
    Ok(Z2Family { source, maps })
}

/// Evaluates the word map η_**w** = (legs)∘Δ^{(|w|)} (antipode twist on
/// starred letters) on an element of kℤ₂*H. The result is the sparse tensor
/// over the target free-product bases, keyed by per-leg basis indices. The
/// entry cap bounds the number of materialized sparse terms.
pub fn eta_word_evaluate(
    fam: &Z2Family,
    w: &Word,
    x: &FPElement,
    limits: &Limits,
) -> Result<Vec<(Vec<usize>, Scalar)>> {
    assert!(Arc::ptr_eq(&x.parent, &fam.source), "element of a different free product");
    for l in w.letters() {
        if l.index >= fam.maps.len() {
            return Err(Error::UnknownIndex { index: l.index, family_size: fam.maps.len() });
        }
    }
    if w.is_empty() {
        let eps = fam.source.counit_sparse(&x.sparse())?;
        return Ok(if eps.is_zero() { Vec::new() } else { vec![(Vec::new(), eps)] });
    }
    let mut budget = Budget { used: 0, cap: limits.cap_entries };
    let mut memo: HashMap<(usize, usize), Arc<Vec<(Vec<usize>, Scalar)>>> = HashMap::new();
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (idx, c) in x.sparse() {
        for (key, v) in eval_suffix(fam, w.letters(), idx, &mut memo, &mut budget)?.iter() {
            let t = c.mul(v);
            if t.is_zero() {
                continue;
            }
            match acc.get_mut(key) {
                Some(e) => {
                    *e = e.add(&t);
                    if e.is_zero() {
                        acc.remove(key);
                    }
                }
                None => {
                    acc.insert(key.clone(), t);
                }
            }
        }
    }
    Ok(acc.into_iter().collect())
}

struct Budget {
    used: usize,
    cap: usize,
}

impl Budget {
    fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::ResourceCap { needed: self.used, cap: self.cap });
        }
        Ok(())
    }
}

fn eval_suffix(
    fam: &Z2Family,
    letters: &[crate::word::Letter],
    word_idx: usize,
    memo: &mut HashMap<(usize, usize), Arc<Vec<(Vec<usize>, Scalar)>>>,
    budget: &mut Budget,
) -> Result<Arc<Vec<(Vec<usize>, Scalar)>>> {
    let key = (letters.len(), word_idx);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let (first, rest) = letters.split_first().expect("nonempty suffix");
    let leg = &fam.maps[first.index];
    let result: Vec<(Vec<usize>, Scalar)> = if rest.is_empty() {
        let input: SparseElem = if first.starred {
            fam.source.antipode_word(word_idx)?
        } else {
            vec![(word_idx, fam.source.field().one())]
        };
        leg.apply_sparse(&input)?
            .into_iter()
            .map(|(t, c)| (vec![t], c))
            .collect()
    } else {
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for ((u, v), c) in fam.source.coproduct_word(word_idx)? {
            let input: SparseElem = if first.starred {
                fam.source.antipode_word(u)?
            } else {
                vec![(u, fam.source.field().one())]
            };
            let img1 = leg.apply_sparse(&input)?;
            if img1.is_empty() {
                continue;
            }
            let tail = eval_suffix(fam, rest, v, memo, budget)?;
            for (t1, c1) in &img1 {
                for (tuple, c2) in tail.iter() {
                    let coeff = c.mul(&c1.mul(c2));
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut k = Vec::with_capacity(tuple.len() + 1);
                    k.push(*t1);
                    k.extend_from_slice(tuple);
                    budget.charge()?;
                    match acc.get_mut(&k) {
                        Some(e) => {
                            *e = e.add(&coeff);
                            if e.is_zero() {
                                acc.remove(&k);
                            }
                        }
                        None => {
                            acc.insert(k, coeff);
                        }
                    }
                }
            }
        }
        acc.into_iter().collect()
    };
    let arc = Arc::new(result);
    memo.insert(key, arc.clone());
    Ok(arc)
}

/// x ↦ the image of x ∈ H*H inside kℤ₂*H under first-copy ↦ H,
/// second-copy letter y ↦ σyσ. Basis words map to single basis words.
pub fn embed_sigma(x: &FPElement, target: &Arc<TruncatedFreeProduct>) -> Result<FPElement> {
    let source = &x.parent;
    assert_eq!(source.factors().len(), 2, "embed_sigma expects H*H");
    assert_eq!(target.factors().len(), 2, "embed_sigma target is kZ2*H");
    for copy in source.factors() {
        if copy.complement != target.factors()[1].complement {
            return Err(Error::InvalidInput(
                "embed_sigma needs both source copies to use the target H complement".into(),
            ));
        }
    }
    let mut terms = Vec::new();
    for (idx, c) in x.sparse() {
        let mut word = FpWord::new();
        for (f, i) in source.basis_word(idx) {
            match f {
                0 => word.push((1, *i)),
                _ => {
                    word.push((0, 0));
                    word.push((1, *i));
                    word.push((0, 0));
                }
            }
        }
        if word.len() > target.bound() {
            return Err(Error::TruncationOverflow { needed: word.len(), bound: target.bound() });
        }
        let widx = target
            .word_index(&word)
            .expect("alternating image word within bound");
        terms.push((widx, c));
    }
    Ok(FPElement::from_terms(target.clone(), &terms))
}

/// x ↦ the image of x ∈ H*K inside (H⊗K)*(H⊗K): H-letters to first-copy
/// h⊗1, K-letters to second-copy 1⊗k. Word lengths never increase.
pub fn embed_tensor_square(x: &FPElement, target: &Arc<TruncatedFreeProduct>) -> Result<FPElement> {
    let source = &x.parent;
    assert_eq!(source.factors().len(), 2, "embed_tensor_square expects H*K");
    let nh = source.factors()[0].algebra.dim();
    let nk = source.factors()[1].algebra.dim();
    for copy in target.factors() {
        if copy.algebra.dim() != nh * nk {
            return Err(Error::DimensionMismatch(
                "embed_tensor_square target copies must be H⊗K".into(),
            ));
        }
    }
    let field = source.field();
    let unit_h = source.factors()[0].algebra.unit().to_vec();
    let unit_k = source.factors()[1].algebra.unit().to_vec();
    let into_m = |f: usize, v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); nh * nk];
        match f {
            0 => {
                for (a, x) in v.iter().enumerate() {
                    for (b, u) in unit_k.iter().enumerate() {
                        out[a * nk + b] = x.mul(u);
                    }
                }
            }
            _ => {
                for (a, u) in unit_h.iter().enumerate() {
                    for (b, x) in v.iter().enumerate() {
                        out[a * nk + b] = u.mul(x);
                    }
                }
            }
        }
        out
    };
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (idx, c) in x.sparse() {
        let mut img: SparseElem = vec![(0, field.one())];
        for (f, i) in source.basis_word(idx) {
            let v = into_m(*f as usize, source.factors()[*f as usize].letter_vector(*i as usize));
            let elem = target.factor_element(*f as usize, &v);
            img = target.mul_sparse(&img, &elem)?;
        }
        for (i, v) in img {
            merge_term(&mut acc, i, c.mul(&v));
        }
    }
    let terms: Vec<(usize, Scalar)> = acc.into_iter().collect();
    Ok(FPElement::from_terms(target.clone(), &terms))
}

#[derive(Debug, Clone)]
pub struct FreeSeparation {
    pub word: Word,
    pub nonzero_terms: usize,
}

/// Scans words over the family indices for one whose η word map does not
/// annihilate x ∈ kℤ₂*H; `None` when the bound is exhausted.
pub fn z2_separation_scan(
    fam: &Z2Family,
    x: &FPElement,
    word_bound: usize,
    limits: &Limits,
) -> Result<Option<FreeSeparation>> {
    if x.is_zero() {
        return Err(Error::InvalidInput("separation of the zero element".into()));
    }
    for w in enumerate_words_up_to(fam.maps.len(), word_bound) {
        let image = eta_word_evaluate(fam, &w, x, limits)?;
        if !image.is_empty() {
            return Ok(Some(FreeSeparation { word: w, nonzero_terms: image.len() }));
        }
    }
    Ok(None)
}

/// Separation for x ∈ H*H via the σ(·)σ embedding into kℤ₂*H.
pub fn square_separation_scan(
    fam: &MorphismFamily,
    x: &FPElement,
    word_bound: usize,
    limits: &Limits,
) -> Result<Option<FreeSeparation>> {
    if x.is_zero() {
        return Err(Error::InvalidInput("separation of the zero element".into()));
    }
    let needed = embedded_sigma_length(x);
    let z2fam = z2_family(fam, needed.max(1))?;
    let embedded = embed_sigma(x, &z2fam.source)?;
    z2_separation_scan(&z2fam, &embedded, word_bound, limits)
}

fn embedded_sigma_length(x: &FPElement) -> usize {
    x.sparse()
        .iter()
        .map(|(i, _)| {
            x.parent
                .basis_word(*i)
                .iter()
                .map(|(f, _)| if *f == 0 { 1 } else { 3 })
                .sum()
        })
        .max()
        .unwrap_or(0)
}

/// Free-product separation following the proof chain: H*K embeds into
/// (H⊗K)*(H⊗K), then into kℤ₂*(H⊗K) via σ(·)σ, where the η word maps of
/// the tensor family are scanned. Both input families must be jointly inner
/// faithful; the internal truncations are sized from the element's support,
/// so the chain itself never overflows.
pub fn free_separation_test(
    fam_h: &MorphismFamily,
    fam_k: &MorphismFamily,
    x: &FPElement,
    word_bound: usize,
    limits: &Limits,
) -> Result<Option<FreeSeparation>> {
    if x.is_zero() {
        return Err(Error::InvalidInput("separation of the zero element".into()));
    }
    for (name, fam) in [("left", fam_h), ("right", fam_k)] {
        if !largest_hopf_ideal(fam.domain(), &common_kernel(fam)).subspace.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{name} family is not jointly inner faithful"
            )));
        }
    }
    let tensor = tensor_family(fam_h, fam_k)?;
    let m = tensor.domain().clone();
    let support = x.support_length();
    let fp_mm = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(m.clone()), FreeFactor::hopf(m.clone())],
        support.max(1),
    )?;
    let y = embed_tensor_square(x, &fp_mm)?;
    square_separation_scan(&tensor, &y, word_bound, limits)
}
