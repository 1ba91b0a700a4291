//! Seeded sampling for randomized verification runs. Everything goes
//! through a ChaCha generator from an explicit u64 seed, so CLI reports are
//! reproducible bit for bit.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, HopfAlgebra};
use crate::field::{FieldSpec, Scalar};
use crate::free::{FPElement, TruncatedFreeProduct};
use crate::matrix::Matrix;
use crate::word::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small exact scalar: over ℚ an integer in [-3, 3] or a half-integer; over
/// 𝔽_p a uniform residue.
pub fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let num: i64 = rng.gen_range(-3..=3);
            if rng.gen_bool(0.2) {
                field.from_i64(num).div(&field.from_i64(2))
            } else {
                field.from_i64(num)
            }
        }
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_nonzero_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_vector(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..dim).map(|_| random_scalar(field, rng)).collect()
}

pub fn random_nonzero_vector(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let v = random_vector(field, dim, rng);
        if v.iter().any(|s| !s.is_zero()) {
            return v;
        }
    }
}

/// `count` linearly independent vectors by rejection; requires count ≤ dim.
pub fn random_independent_set(
    field: FieldSpec,
    dim: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Scalar>> {
    assert!(count <= dim);
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(count);
    while rows.len() < count {
        let v = random_nonzero_vector(field, dim, rng);
        let mut candidate = rows.clone();
        candidate.push(v.clone());
        if Matrix::from_rows(field, candidate).rank() == rows.len() + 1 {
            rows.push(v);
        }
    }
    rows
}

pub fn random_word(index_count: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter { index: rng.gen_range(0..index_count), starred: rng.gen_bool(0.5) })
            .collect(),
    )
}

/// A subword obtained by keeping a random subset of letters in order.
pub fn random_subword(w: &Word, rng: &mut ChaCha8Rng) -> Word {
    Word(w.letters().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect())
}

/// Nonzero element supported on at most `max_words` basis words of reduced
/// length ≤ `max_len`.
pub fn random_fp_element(
    fp: &Arc<TruncatedFreeProduct>,
    max_words: usize,
    max_len: usize,
    rng: &mut ChaCha8Rng,
) -> FPElement {
    let candidates: Vec<usize> = (0..fp.basis_len())
        .filter(|&i| fp.basis_word(i).len() <= max_len)
        .collect();
    loop {
        let count = rng.gen_range(1..=max_words);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let idx = candidates[rng.gen_range(0..candidates.len())];
            terms.push((idx, random_scalar(fp.field(), rng)));
        }
        let e = FPElement::from_terms(fp.clone(), &terms);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Corrupts one structure-constant entry of one component (mult, comult,
/// counit, antipode, unit) to a different random scalar.
pub fn random_mutation(h: &HopfAlgebra, rng: &mut ChaCha8Rng) -> HopfAlgebra {
    let field = h.field();
    let n = h.dim();
    let fresh = |old: &Scalar, rng: &mut ChaCha8Rng| loop {
        let s = random_scalar(field, rng);
        if s != *old {
            break s;
        }
    };
    let mut mult = h.algebra().mult_tensor().to_vec();
    let mut comult = h.comult_tensor().to_vec();
    let mut counit = h.counit().to_vec();
    let mut unit = h.unit().to_vec();
    let mut antipode = h.antipode().clone();
    match rng.gen_range(0..5) {
        0 => {
            let i = rng.gen_range(0..mult.len());
            mult[i] = fresh(&mult[i], rng);
        }
        1 => {
            let i = rng.gen_range(0..comult.len());
            comult[i] = fresh(&comult[i], rng);
        }
        2 => {
            let i = rng.gen_range(0..n);
            counit[i] = fresh(&counit[i], rng);
        }
        3 => {
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let v = fresh(antipode.get(r, c), rng);
            antipode.set(r, c, v);
        }
        _ => {
            let i = rng.gen_range(0..n);
            unit[i] = fresh(&unit[i], rng);
        }
    }
    HopfAlgebra::from_parts(Algebra::new(field, n, mult, unit), comult, counit, antipode)
}
