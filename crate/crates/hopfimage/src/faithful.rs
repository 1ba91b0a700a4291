//! Joint inner faithfulness: word maps, kernel chains, the largest-Hopf-ideal
//! fixed point, Hopf images, and separation searches.
//!
//! A family π_i: H → A_i induces for every word **i** over the index set and
//! its starred copies the map π_**i** = (c_1⊗…⊗c_k)∘Δ^{(k)}, where c_t is
//! π_{i_t} on plain letters and π_{i_t}∘S on starred ones (landing in the
//! opposite algebra). The family is jointly inner faithful iff the largest
//! Hopf ideal inside ⋂ ker π_i is zero; the word-kernel chain is kept as an
//! independent cross-check of that verdict.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism, Carrier, HopfAlgebra};
use crate::error::{Error, Result};
use crate::exec;
use crate::field::Scalar;
use crate::matrix::{dense_to_sparse, kernel_of_columns, Matrix, SparseVec};
use crate::subspace::Subspace;
use crate::word::{enumerate_words, enumerate_words_up_to, Letter, Word};

/// Resource guard for single word evaluations: a word map whose matrix (or
/// whose tensor-target structure tensor, for [`word_map`]) would exceed this
/// many entries is refused with [`Error::ResourceCap`].
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub cap_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap_entries: 1_000_000 }
    }
}

/// An indexed family of verified algebra morphisms out of one Hopf algebra.
#[derive(Debug, Clone)]
pub struct MorphismFamily {
    domain: Arc<HopfAlgebra>,
    maps: Vec<AlgebraMorphism>,
    hopf_family: bool,
}

impl MorphismFamily {
    pub fn new(domain: Arc<HopfAlgebra>, maps: Vec<AlgebraMorphism>) -> Result<MorphismFamily> {
        if maps.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for m in &maps {
            if m.source().algebra() != domain.algebra() {
                return Err(Error::DimensionMismatch(
                    "family map source differs from the declared domain".into(),
                ));
            }
            if m.source().field() != domain.field() {
                return Err(Error::FieldMismatch("family map field".into()));
            }
        }
        let hopf_family = maps.iter().all(AlgebraMorphism::is_hopf);
        Ok(MorphismFamily { domain, maps, hopf_family })
    }

    pub fn domain(&self) -> &Arc<HopfAlgebra> {
        &self.domain
    }

    pub fn maps(&self) -> &[AlgebraMorphism] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn hopf_family(&self) -> bool {
        self.hopf_family
    }
}

// ---------------------------------------------------------------------------
// Word maps and kernels
// ---------------------------------------------------------------------------

/// Sparse columns of the word-map matrix together with the target dimension.
/// Column j holds π_**w**(e_j) over the left-major tensor basis of the
/// target.
pub(crate) fn word_map_columns(
    fam: &MorphismFamily,
    w: &Word,
    limits: &Limits,
) -> Result<(Vec<SparseVec>, usize)> {
    let h = fam.domain();
    let n = h.dim();
    let k = w.len();
    let mut leg_cols: Vec<Vec<SparseVec>> = Vec::with_capacity(k);
    let mut leg_dims: Vec<usize> = Vec::with_capacity(k);
    let mut target_dim: usize = 1;
    for letter in w.letters() {
        let map = fam
            .maps
            .get(letter.index)
            .ok_or(Error::UnknownIndex { index: letter.index, family_size: fam.len() })?;
        let matrix = if letter.starred {
            map.matrix().mul(h.antipode())?
        } else {
            map.matrix().clone()
        };
        let d = matrix.rows();
        leg_cols.push((0..n).map(|j| dense_to_sparse(&matrix.col_vec(j))).collect());
        leg_dims.push(d);
        target_dim = target_dim
            .checked_mul(d)
            .ok_or(Error::ResourceCap { needed: usize::MAX, cap: limits.cap_entries })?;
    }
    let needed = target_dim.saturating_mul(n);
    if needed > limits.cap_entries {
        return Err(Error::ResourceCap { needed, cap: limits.cap_entries });
    }

    let columns = (0..n)
        .map(|j| {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (flat, coeff) in h.iterated_column(k, j) {
                let legs = crate::algebra::unflatten(flat, n, k);
                let mut terms: Vec<(usize, Scalar)> = vec![(0, coeff)];
                for (t, &leg_val) in legs.iter().enumerate() {
                    let mut next = Vec::new();
                    for (row, c) in &leg_cols[t][leg_val] {
                        for (base, x) in &terms {
                            next.push((base * leg_dims[t] + row, x.mul(c)));
                        }
                    }
                    terms = next;
                    if terms.is_empty() {
                        break;
                    }
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
        .collect();
    Ok((columns, target_dim))
}

/// The word map π_**w**: H → A_**w** as a verified morphism object; the
/// target is the tensor product of the letter targets with `opposite()`
/// applied at starred positions. Subject to the entry cap both for the
/// matrix and for the target structure tensor.
pub fn word_map(fam: &MorphismFamily, w: &Word, limits: &Limits) -> Result<AlgebraMorphism> {
    let h = fam.domain();
    let (columns, target_dim) = word_map_columns(fam, w, limits)?;
    let cube = target_dim
        .checked_mul(target_dim)
        .and_then(|x| x.checked_mul(target_dim))
        .unwrap_or(usize::MAX);
    if cube > limits.cap_entries {
        return Err(Error::ResourceCap { needed: cube, cap: limits.cap_entries });
    }
    let target = if w.is_empty() {
        Carrier::hopf(HopfAlgebra::trivial(h.field()))
    } else {
        let mut acc: Option<Algebra> = None;
        for letter in w.letters() {
            let base = fam.maps[letter.index].target().algebra();
            let piece = if letter.starred { base.opposite() } else { base.clone() };
            acc = Some(match acc {
                None => piece,
                Some(a) => a.tensor(&piece)?,
            });
        }
        Carrier::plain(acc.expect("nonempty word"))
    };
    let mut matrix = Matrix::zero(target_dim, h.dim(), h.field());
    for (j, col) in columns.iter().enumerate() {
        for (idx, c) in col {
            matrix.set(*idx, j, c.clone());
        }
    }
    Ok(AlgebraMorphism::new_unchecked(
        Carrier::Hopf(h.clone()),
        target,
        matrix,
        false,
    ))
}

/// ker π_**w** as a canonical subspace of the domain.
pub fn word_kernel(fam: &MorphismFamily, w: &Word, limits: &Limits) -> Result<Subspace> {
    let (columns, _) = word_map_columns(fam, w, limits)?;
    Ok(Subspace::from_rows(&kernel_of_columns(&columns, fam.domain().field())))
}

/// The decreasing chain I_n = ⋂_{|w| ≤ n} ker π_**w**, starting from
/// I_0 = ker ε.
#[derive(Debug, Clone)]
pub struct KernelChain {
    /// I_0, I_1, …, I_max_len.
    pub subspaces: Vec<Subspace>,
    /// First n with I_n = I_{n+1}, if that happens within the scan.
    pub stabilized_at: Option<usize>,
}

impl KernelChain {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }
}

pub fn kernel_chain(fam: &MorphismFamily, max_len: usize, limits: &Limits) -> Result<KernelChain> {
    kernel_chain_with(fam, max_len, limits, exec::default_parallel())
}

/// Sequential variant of [`kernel_chain`]; the benchmark suite compares the
/// two.
pub fn kernel_chain_seq(fam: &MorphismFamily, max_len: usize, limits: &Limits) -> Result<KernelChain> {
    kernel_chain_with(fam, max_len, limits, false)
}

fn kernel_chain_with(
    fam: &MorphismFamily,
    max_len: usize,
    limits: &Limits,
    par: bool,
) -> Result<KernelChain> {
    let mut current = word_kernel(fam, &Word::empty(), limits)?;
    let mut chain = vec![current.clone()];
    for len in 1..=max_len {
        // Intersections below the zero subspace cannot shrink further.
        if !current.is_zero() {
            let words = enumerate_words(fam.len(), len);
            let kernels = exec::map_collect(&words, par, |w| word_kernel(fam, w, limits));
            for k in kernels {
                current = current.intersect(&k?)?;
                if current.is_zero() {
                    break;
                }
            }
        }
        chain.push(current.clone());
    }
    let stabilized_at = (0..chain.len().saturating_sub(1)).find(|&n| chain[n] == chain[n + 1]);
    Ok(KernelChain { subspaces: chain, stabilized_at })
}

// ---------------------------------------------------------------------------
// Largest Hopf ideal and the joint inner faithfulness verdict
// ---------------------------------------------------------------------------

/// Closure conditions re-verified on the returned subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureChecks {
    pub contained_in_ker_eps: bool,
    pub two_sided_ideal: bool,
    pub coideal: bool,
    pub antipode_stable: bool,
}

impl ClosureChecks {
    pub fn all(&self) -> bool {
        self.contained_in_ker_eps && self.two_sided_ideal && self.coideal && self.antipode_stable
    }
}

/// A subspace certified as a Hopf ideal: two-sided ideal, coideal
/// (Δ(J) ⊆ J⊗H + H⊗J), antipode-stable, inside ker ε.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfIdealCertificate {
    pub subspace: Subspace,
    pub checks: ClosureChecks,
}

/// Greatest subspace of `v ∩ ker ε` closed under the Hopf-ideal conditions,
/// computed by fixed-point refinement. Dimensions strictly decrease until
/// the fixed point, so termination is immediate; any closed subspace of `v`
/// stays inside every refinement step, which gives maximality.
pub fn largest_hopf_ideal(h: &HopfAlgebra, v: &Subspace) -> HopfIdealCertificate {
    let mut j = v
        .intersect(&h.augmentation_ideal())
        .expect("subspace of the domain");
    loop {
        if j.is_zero() {
            break;
        }
        let refined = refine_once(h, &j);
        if refined == j {
            break;
        }
        j = refined;
    }
    let checks = verify_closure(h, &j);
    assert!(checks.all(), "fixed point left a non-closed subspace: {checks:?}");
    HopfIdealCertificate { subspace: j, checks }
}

/// One refinement step: members of J whose Δ, S, and products with every
/// basis vector stay in the J-generated constraints.
fn refine_once(h: &HopfAlgebra, j: &Subspace) -> Subspace {
    let n = h.dim();
    let field = h.field();
    let (proj, _) = j.quotient_basis();
    let q_rows = proj.rows();
    let mut condition_rows: Vec<Vec<Scalar>> = Vec::new();
    // S(x) ∈ J
    let qs = proj.mul(h.antipode()).expect("shape");
    for r in 0..qs.rows() {
        condition_rows.push(qs.row_vec(r));
    }
    // e_a·x ∈ J and x·e_a ∈ J for all basis a
    for a in 0..n {
        let ql = proj.mul(&h.algebra().left_mult_matrix(a)).expect("shape");
        let qr = proj.mul(&h.algebra().right_mult_matrix(a)).expect("shape");
        for r in 0..ql.rows() {
            condition_rows.push(ql.row_vec(r));
        }
        for r in 0..qr.rows() {
            condition_rows.push(qr.row_vec(r));
        }
    }
    // Δ(x) ∈ J⊗H + H⊗J = ker(Q⊗Q)
    let proj_cols: Vec<Vec<Scalar>> = (0..n).map(|c| proj.col_vec(c)).collect();
    let mut qq_delta = vec![vec![field.zero(); n]; q_rows * q_rows];
    for col in 0..n {
        for ((k, l), c) in h.comult_pairs(col) {
            for (rk, x) in proj_cols[k].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (rl, y) in proj_cols[l].iter().enumerate() {
                    if !y.is_zero() {
                        let row = rk * q_rows + rl;
                        qq_delta[row][col] = qq_delta[row][col].add(&c.mul(&x.mul(y)));
                    }
                }
            }
        }
    }
    condition_rows.extend(qq_delta);

    // Restrict the conditions to J: x = yᵀB, solve (C·Bᵀ)y = 0.
    let conditions = Matrix::from_rows(field, condition_rows);
    let restricted = conditions.mul(&j.basis().transpose()).expect("shape");
    let y_kernel = restricted.kernel_basis();
    let new_basis = y_kernel.mul(j.basis()).expect("shape");
    Subspace::from_rows(&new_basis)
}

fn verify_closure(h: &HopfAlgebra, j: &Subspace) -> ClosureChecks {
    let n = h.dim();
    let basis = j.basis();
    let contained_in_ker_eps = (0..j.dim()).all(|r| h.counit_of(basis.row(r)).is_zero());
    let two_sided_ideal = (0..j.dim()).all(|r| {
        (0..n).all(|a| {
            let mut e = vec![h.field().zero(); n];
            e[a] = h.field().one();
            j.contains_vector(&h.algebra().multiply(&e, basis.row(r)))
                && j.contains_vector(&h.algebra().multiply(basis.row(r), &e))
        })
    });
    let antipode_stable =
        (0..j.dim()).all(|r| j.contains_vector(&h.antipode_of(basis.row(r))));
    let (proj, _) = j.quotient_basis();
    let q_rows = proj.rows();
    let coideal = (0..j.dim()).all(|r| {
        let mut image = vec![h.field().zero(); q_rows * q_rows];
        for ((k, l), c) in h.comult_of_vec(basis.row(r)) {
            let pk = proj.col_vec(k);
            let pl = proj.col_vec(l);
            for (rk, x) in pk.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (rl, y) in pl.iter().enumerate() {
                    if !y.is_zero() {
                        image[rk * q_rows + rl] = image[rk * q_rows + rl].add(&c.mul(&x.mul(y)));
                    }
                }
            }
        }
        image.iter().all(Scalar::is_zero)
    });
    ClosureChecks { contained_in_ker_eps, two_sided_ideal, coideal, antipode_stable }
}

/// ⋂_i ker π_i over the family maps.
pub fn common_kernel(fam: &MorphismFamily) -> Subspace {
    let mut stacked = fam.maps[0].matrix().clone();
    for m in &fam.maps[1..] {
        stacked = stacked.vstack(m.matrix()).expect("same source dimension");
    }
    Subspace::from_rows(&stacked.kernel_basis())
}

/// Verdict of the joint inner faithfulness decision, with the fixed-point
/// witness and the word-scan cross-check.
#[derive(Debug, Clone)]
pub struct IFVerdict {
    pub jointly_inner_faithful: bool,
    pub witness: HopfIdealCertificate,
    /// (word length, dim of kernel intersection) per scanned length.
    pub word_scan: Vec<(usize, usize)>,
    pub stabilized_at: Option<usize>,
    /// Whether the scan intersection at the last length equals the witness.
    pub scan_reached_witness: bool,
}

pub fn decide_jointly_if(fam: &MorphismFamily, scan_len: usize, limits: &Limits) -> Result<IFVerdict> {
    let common = common_kernel(fam);
    let witness = largest_hopf_ideal(fam.domain(), &common);
    for m in &fam.maps {
        let images: Vec<Vec<Scalar>> =
            (0..witness.subspace.dim()).map(|r| m.apply(witness.subspace.basis().row(r))).collect();
        assert!(
            images.iter().all(|v| v.iter().all(Scalar::is_zero)),
            "witness escapes a family kernel"
        );
    }
    let chain = kernel_chain(fam, scan_len, limits)?;
    for (n, i_n) in chain.subspaces.iter().enumerate() {
        assert!(
            i_n.contains(&witness.subspace),
            "witness not contained in the length-{n} kernel intersection"
        );
    }
    let scan_reached_witness = chain.subspaces.last() == Some(&witness.subspace);
    Ok(IFVerdict {
        jointly_inner_faithful: witness.subspace.is_zero(),
        word_scan: chain.subspaces.iter().enumerate().map(|(n, s)| (n, s.dim())).collect(),
        stabilized_at: chain.stabilized_at,
        scan_reached_witness,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Hopf image
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HopfImage {
    pub image: Arc<HopfAlgebra>,
    pub quotient: AlgebraMorphism,
    pub factored: Vec<AlgebraMorphism>,
    pub witness: HopfIdealCertificate,
}

/// H̄ = H/J for J the largest Hopf ideal inside the common kernel, on the
/// complement basis of J, together with the quotient map and the exact
/// factorizations π_i = factored_i ∘ quotient.
pub fn hopf_image(fam: &MorphismFamily) -> Result<HopfImage> {
    let h = fam.domain();
    let field = h.field();
    let witness = largest_hopf_ideal(h, &common_kernel(fam));
    let j = &witness.subspace;
    let (proj, compl) = j.quotient_basis();
    let m = proj.rows();

    let include = compl.transpose(); // n × m, column i = representative of ē_i
    let mut mult = vec![field.zero(); m * m * m];
    for i in 0..m {
        for jj in 0..m {
            let prod = h.algebra().multiply(compl.row(i), compl.row(jj));
            let reduced = proj.apply(&prod)?;
            for (k, c) in reduced.into_iter().enumerate() {
                mult[(i * m + jj) * m + k] = c;
            }
        }
    }
    let unit = proj.apply(h.unit())?;
    let algebra = Algebra::new(field, m, mult, unit);

    let mut comult = vec![field.zero(); m * m * m];
    for col in 0..m {
        for ((k, l), c) in h.comult_of_vec(compl.row(col)) {
            let pk = proj.col_vec(k);
            let pl = proj.col_vec(l);
            for (rk, x) in pk.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (rl, y) in pl.iter().enumerate() {
                    if !y.is_zero() {
                        let idx = col * m * m + rk * m + rl;
                        comult[idx] = comult[idx].add(&c.mul(&x.mul(y)));
                    }
                }
            }
        }
    }
    let counit: Vec<Scalar> = (0..m).map(|i| h.counit_of(compl.row(i))).collect();
    let antipode = proj.mul(h.antipode())?.mul(&include)?;
    let image = Arc::new(HopfAlgebra::from_parts(algebra, comult, counit, antipode));

    let quotient = AlgebraMorphism::new(
        Carrier::Hopf(h.clone()),
        Carrier::Hopf(image.clone()),
        proj.clone(),
    )?;
    assert!(quotient.is_hopf(), "quotient by a Hopf ideal must be a Hopf morphism");

    let mut factored = Vec::with_capacity(fam.len());
    for map in &fam.maps {
        let matrix = map.matrix().mul(&include)?;
        factored.push(AlgebraMorphism::new(
            Carrier::Hopf(image.clone()),
            map.target().clone(),
            matrix,
        )?);
    }
    Ok(HopfImage { image, quotient, factored, witness })
}

// ---------------------------------------------------------------------------
// Families: tensors, products, separation
// ---------------------------------------------------------------------------

/// The family π_i⊗π_j indexed by I×J (i major), on the tensor-product Hopf
/// algebra.
pub fn tensor_family(left: &MorphismFamily, right: &MorphismFamily) -> Result<MorphismFamily> {
    if left.domain().field() != right.domain().field() {
        return Err(Error::FieldMismatch("tensor family".into()));
    }
    let domain = Arc::new(left.domain().tensor(right.domain())?);
    let mut maps = Vec::with_capacity(left.len() * right.len());
    for a in &left.maps {
        for b in &right.maps {
            let mut t = a.tensor(b)?;
            // all tensor maps share one domain object
            t = AlgebraMorphism::new_unchecked(
                Carrier::Hopf(domain.clone()),
                t.target().clone(),
                t.matrix().clone(),
                t.is_hopf(),
            );
            maps.push(t);
        }
    }
    MorphismFamily::new(domain, maps)
}

/// Smallest word (shortest, then lexicographic) whose word map keeps the
/// given independent vectors independent; `None` when no word of length
/// ≤ max_len works.
pub fn separating_word(
    fam: &MorphismFamily,
    vectors: &[Vec<Scalar>],
    max_len: usize,
    limits: &Limits,
) -> Result<Option<Word>> {
    separating_word_with(fam, vectors, max_len, limits, exec::default_parallel())
}

pub fn separating_word_seq(
    fam: &MorphismFamily,
    vectors: &[Vec<Scalar>],
    max_len: usize,
    limits: &Limits,
) -> Result<Option<Word>> {
    separating_word_with(fam, vectors, max_len, limits, false)
}

fn separating_word_with(
    fam: &MorphismFamily,
    vectors: &[Vec<Scalar>],
    max_len: usize,
    limits: &Limits,
    par: bool,
) -> Result<Option<Word>> {
    let field = fam.domain().field();
    let stacked = Matrix::from_rows(field, vectors.to_vec());
    if stacked.rank() != vectors.len() {
        return Err(Error::NotIndependent);
    }
    for len in 0..=max_len {
        let words = enumerate_words(fam.len(), len);
        let verdicts = exec::map_collect(&words, par, |w| -> Result<bool> {
            let (columns, _) = word_map_columns(fam, w, limits)?;
            Ok(images_independent(&columns, vectors, field))
        });
        for (w, v) in words.iter().zip(verdicts) {
            if v? {
                return Ok(Some(w.clone()));
            }
        }
    }
    Ok(None)
}

/// Σ_j v_j·col_j as a sparse image vector.
pub(crate) fn apply_columns(columns: &[SparseVec], v: &[Scalar]) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (idx, x) in &columns[j] {
            let add = x.mul(c);
            match acc.get_mut(idx) {
                Some(e) => {
                    *e = e.add(&add);
                    if e.is_zero() {
                        acc.remove(idx);
                    }
                }
                None => {
                    acc.insert(*idx, add);
                }
            }
        }
    }
    acc.into_iter().collect()
}

fn images_independent(columns: &[SparseVec], vectors: &[Vec<Scalar>], field: crate::field::FieldSpec) -> bool {
    let images: Vec<SparseVec> = vectors.iter().map(|v| apply_columns(columns, v)).collect();
    kernel_of_columns(&images, field).rows() == 0
}

/// Extends the family by direct-product maps H → A_{i_1}×…×A_{i_m} over all
/// index subsets of size 2..=max_subset_size, in (size, lex) order.
pub fn close_under_products(fam: &MorphismFamily, max_subset_size: usize) -> Result<MorphismFamily> {
    let mut maps = fam.maps.clone();
    let m = fam.len();
    let cap = max_subset_size.min(m);
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    collect_subsets(m, cap, &mut subsets);
    for subset in subsets {
        let chosen: Vec<&AlgebraMorphism> = subset.iter().map(|&i| &fam.maps[i]).collect();
        maps.push(AlgebraMorphism::direct_product(&chosen)?);
    }
    MorphismFamily::new(fam.domain().clone(), maps)
}

fn collect_subsets(m: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(start: usize, m: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            if m - i < remaining {
                break;
            }
            current.push(i);
            rec(i + 1, m, remaining - 1, current, out);
            current.pop();
        }
    }
    for size in 2..=cap {
        let mut cur = Vec::new();
        rec(0, m, size, &mut cur, out);
    }
}

/// ⋂ ker π_i = 0: the family separates points as plain linear maps.
pub fn is_jointly_faithful(fam: &MorphismFamily) -> bool {
    common_kernel(fam).is_zero()
}

pub fn antipode_injective(h: &HopfAlgebra) -> bool {
    h.antipode().rank() == h.dim()
}

// ---------------------------------------------------------------------------
// Mixed tensor separation (faithful ⊗ inner faithful)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct MixedBounds {
    pub word_bound: usize,
    pub closure_size: usize,
}

impl Default for MixedBounds {
    fn default() -> Self {
        MixedBounds { word_bound: 4, closure_size: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct MixedSeparation {
    /// Word over I×J (I major) certifying non-annihilation of the element.
    pub word: Word,
    /// Number of nonzero coordinates in the image.
    pub nonzero_entries: usize,
}

/// §4-style separation: given a jointly faithful plain family on H (with
/// injective antipode) and a jointly IF family on K, finds a word over I×J
/// whose word map does not annihilate the nonzero element x ∈ H⊗K.
///
/// The j-word is scanned in order; for each candidate, the i-letters are
/// chosen position by position so that some family map is injective on the
/// span of the position-t tensorands of the twisted coproducts of the left
/// factors, then the verdict is verified by direct evaluation.
pub fn mixed_tensor_separation(
    fam_left: &MorphismFamily,
    fam_right: &MorphismFamily,
    x: &[Scalar],
    bounds: &MixedBounds,
    limits: &Limits,
) -> Result<MixedSeparation> {
    let h = fam_left.domain();
    let k_dom = fam_right.domain();
    let (nh, nk) = (h.dim(), k_dom.dim());
    if x.len() != nh * nk {
        return Err(Error::DimensionMismatch(format!(
            "element length {} for H⊗K of dimension {}",
            x.len(),
            nh * nk
        )));
    }
    if x.iter().all(Scalar::is_zero) {
        return Err(Error::InvalidInput("mixed separation of the zero element".into()));
    }
    if !antipode_injective(h) {
        return Err(Error::InvalidInput("left domain antipode is not injective".into()));
    }
    let closed = close_under_products(fam_left, bounds.closure_size)?;
    if !is_jointly_faithful(&closed) {
        return Err(Error::InvalidInput("left family is not jointly faithful".into()));
    }
    if !largest_hopf_ideal(k_dom, &common_kernel(fam_right)).subspace.is_zero() {
        return Err(Error::InvalidInput("right family is not jointly inner faithful".into()));
    }

    // x = Σ_s ê_s ⊗ f̂_s with ê independent columns, f̂ independent rows.
    let coeff = Matrix::from_fn(nh, nk, h.field(), |a, b| x[a * nk + b].clone());
    let r = coeff.rref();
    let pivots = crate::matrix::pivot_columns(&r);
    let rank = r.rows();
    let e_vecs: Vec<Vec<Scalar>> = (0..rank)
        .map(|s| (0..nh).map(|a| coeff.get(a, pivots[s]).clone()).collect())
        .collect();
    let f_vecs: Vec<Vec<Scalar>> = (0..rank).map(|s| r.row_vec(s)).collect();

    let combined = tensor_family(&closed, fam_right)?;
    for j_word in enumerate_words_up_to(fam_right.len(), bounds.word_bound) {
        let (j_cols, _) = word_map_columns(fam_right, &j_word, limits)?;
        let some_f_survives = f_vecs.iter().any(|f| !apply_columns(&j_cols, f).is_empty());
        if !some_f_survives {
            continue;
        }
        let Some(i_letters) = choose_left_letters(h, &closed, &e_vecs, &j_word) else {
            continue;
        };
        let letters: Vec<Letter> = i_letters
            .iter()
            .zip(j_word.letters())
            .map(|(&i, jl)| Letter { index: i * fam_right.len() + jl.index, starred: jl.starred })
            .collect();
        let candidate = Word(letters);
        let (cols, _) = word_map_columns(&combined, &candidate, limits)?;
        let image = apply_columns(&cols, x);
        if !image.is_empty() {
            return Ok(MixedSeparation { word: candidate, nonzero_entries: image.len() });
        }
    }
    Err(Error::BoundExceeded { bound: bounds.word_bound })
}

/// Position-wise choice of left-family indices: at each leg, the first map
/// injective on the span of that leg's tensorands of Δ^{(pattern)}(ê_s).
fn choose_left_letters(
    h: &HopfAlgebra,
    closed: &MorphismFamily,
    e_vecs: &[Vec<Scalar>],
    j_word: &Word,
) -> Option<Vec<usize>> {
    let k = j_word.len();
    if k == 0 {
        return Some(Vec::new());
    }
    let n = h.dim();
    let polarities: Vec<bool> = j_word.letters().iter().map(|l| l.starred).collect();
    let twisted = h.twisted_columns(&polarities);
    let images: Vec<SparseVec> = e_vecs.iter().map(|e| apply_columns(&twisted, e)).collect();
    let mut choice = Vec::with_capacity(k);
    for t in 0..k {
        let mut fibers: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (s, img) in images.iter().enumerate() {
            for (flat, c) in img {
                let legs = crate::algebra::unflatten(*flat, n, k);
                let rest = flatten_without(&legs, t, n) + s * n.pow((k - 1) as u32).max(1);
                fibers
                    .entry(rest)
                    .or_insert_with(|| vec![h.field().zero(); n])
                    [legs[t]] = c.clone();
            }
        }
        let rows: Vec<Vec<Scalar>> = fibers.into_values().collect();
        let span = Subspace::from_rows(&Matrix::from_rows(h.field(), rows));
        let idx = (0..closed.len()).find(|&i| {
            let images = span
                .basis()
                .mul(&closed.maps()[i].matrix().transpose())
                .expect("shape");
            images.rank() == span.dim()
        })?;
        choice.push(idx);
    }
    Some(choice)
}

fn flatten_without(legs: &[usize], skip: usize, n: usize) -> usize {
    let mut acc = 0;
    for (i, &l) in legs.iter().enumerate() {
        if i != skip {
            acc = acc * n + l;
        }
    }
    acc
}
