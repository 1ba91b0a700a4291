//! Truncated free products: reduced-word arithmetic, the free Hopf
//! structure, η families, embeddings, and the separation scans.

use std::sync::Arc;

use hopfimage::builtins::{builtin_family, group_z2, group_z2z2, sweedler};
use hopfimage::error::Error;
use hopfimage::faithful::{tensor_family, Limits};
use hopfimage::field::{FieldSpec, Scalar};
use hopfimage::free::{
    embed_sigma, embed_tensor_square, eta_word_evaluate, free_separation_test, inject_factor,
    square_separation_scan, z2_family, z2_free_product, z2_separation_scan, FPElement, FreeFactor,
    FreeMap, TruncatedFreeProduct,
};
use hopfimage::matrix::Matrix;
use hopfimage::word::Word;

const Q: FieldSpec = FieldSpec::Rationals;

fn limits() -> Limits {
    Limits::default()
}

/// kℤ₂ * kℤ₂ with group-element letters (s from the first copy, t from the
/// second).
fn z2_star_z2_grouplike(bound: usize) -> Arc<TruncatedFreeProduct> {
    let z2 = || FreeFactor::grouplike(Arc::new(group_z2())).unwrap();
    TruncatedFreeProduct::build(vec![z2(), z2()], bound).unwrap()
}

fn word_elem(fp: &Arc<TruncatedFreeProduct>, letters: &[(u8, u16)]) -> FPElement {
    let idx = fp.word_index(&letters.to_vec()).unwrap();
    FPElement::from_terms(fp.clone(), &[(idx, Q.one())])
}

#[test]
fn z2_star_z2_basis_has_seven_words_at_bound_three() {
    let fp = z2_star_z2_grouplike(3);
    assert_eq!(fp.basis_len(), 7);
    let words: Vec<String> = (0..7).map(|i| fp.word_string(i)).collect();
    assert_eq!(
        words,
        vec!["", "0:e0", "1:e0", "0:e0 1:e0", "1:e0 0:e0", "0:e0 1:e0 0:e0", "1:e0 0:e0 1:e0"]
    );
}

#[test]
fn dihedral_truncation_has_2l_plus_1_words() {
    for bound in 0..6 {
        let fp = z2_star_z2_grouplike(bound);
        assert_eq!(fp.basis_len(), 2 * bound + 1);
    }
}

#[test]
fn group_letter_squares_to_one() {
    let fp = z2_star_z2_grouplike(3);
    let s = word_elem(&fp, &[(0, 0)]);
    let one = word_elem(&fp, &[]);
    assert_eq!(s.mul(&s).unwrap().coords, one.coords);
}

#[test]
fn st_times_ts_reduces_to_one() {
    let fp = z2_star_z2_grouplike(3);
    let st = word_elem(&fp, &[(0, 0), (1, 0)]);
    let ts = word_elem(&fp, &[(1, 0), (0, 0)]);
    let one = word_elem(&fp, &[]);
    assert_eq!(st.mul(&ts).unwrap().coords, one.coords);
}

/// Independent oracle for kℤ₂*ℤ₂ with group letters: free reduction of
/// {s,t}-strings with ss → ε, tt → ε.
fn reduce_group_word(mut word: Vec<u8>) -> Vec<u8> {
    loop {
        let mut reduced = Vec::with_capacity(word.len());
        let mut changed = false;
        for c in word {
            if reduced.last() == Some(&c) {
                reduced.pop();
                changed = true;
            } else {
                reduced.push(c);
            }
        }
        if !changed {
            return reduced;
        }
        word = reduced;
    }
}

#[test]
fn products_agree_with_free_group_reduction() {
    let fp = z2_star_z2_grouplike(6);
    for u in 0..fp.basis_len() {
        for v in 0..fp.basis_len() {
            let wu = fp.basis_word(u).clone();
            let wv = fp.basis_word(v).clone();
            if wu.len() + wv.len() > 6 {
                continue;
            }
            let product = fp.basis_product(u, v).unwrap();
            let mut concat: Vec<u8> = wu.iter().map(|l| l.0).collect();
            concat.extend(wv.iter().map(|l| l.0));
            let expected: Vec<(u8, u16)> =
                reduce_group_word(concat).into_iter().map(|f| (f, 0)).collect();
            let expected_idx = fp.word_index(&expected).unwrap();
            assert_eq!(product.len(), 1, "{u} {v}");
            assert_eq!(product[0], (expected_idx, Q.one()));
        }
    }
}

#[test]
fn default_complement_letter_squares_to_twice_itself() {
    // with ker ε letters the kZ2 letter is 1−t and (1−t)² = 2(1−t)
    let z2 = || FreeFactor::hopf(Arc::new(group_z2()));
    let fp = TruncatedFreeProduct::build(vec![z2(), z2()], 3).unwrap();
    assert_eq!(fp.basis_len(), 7);
    let s = word_elem(&fp, &[(0, 0)]);
    let expected: Vec<Scalar> = s.coords.iter().map(|c| c.mul(&Q.from_i64(2))).collect();
    assert_eq!(s.mul(&s).unwrap().coords, expected);
}

#[test]
fn truncated_multiplication_is_associative_and_unital() {
    let factors = vec![
        FreeFactor::hopf(Arc::new(group_z2())),
        FreeFactor::hopf(Arc::new(group_z2z2())),
    ];
    let fp = TruncatedFreeProduct::build(factors, 4).unwrap();
    let one = word_elem(&fp, &[]);
    for u in 0..fp.basis_len() {
        let eu = FPElement::from_terms(fp.clone(), &[(u, Q.one())]);
        assert_eq!(one.mul(&eu).unwrap().coords, eu.coords);
        assert_eq!(eu.mul(&one).unwrap().coords, eu.coords);
    }
    for u in 0..fp.basis_len() {
        for v in 0..fp.basis_len() {
            for t in 0..fp.basis_len() {
                let lu = fp.basis_word(u).len();
                let lv = fp.basis_word(v).len();
                let lt = fp.basis_word(t).len();
                if lu + lv + lt > 4 || lu.min(lv).min(lt) == 0 {
                    continue;
                }
                let eu = FPElement::from_terms(fp.clone(), &[(u, Q.one())]);
                let ev = FPElement::from_terms(fp.clone(), &[(v, Q.one())]);
                let et = FPElement::from_terms(fp.clone(), &[(t, Q.one())]);
                let left = eu.mul(&ev).unwrap().mul(&et).unwrap();
                let right = eu.mul(&ev.mul(&et).unwrap()).unwrap();
                assert_eq!(left.coords, right.coords, "({u},{v},{t})");
            }
        }
    }
}

#[test]
fn products_past_the_bound_overflow() {
    let fp = z2_star_z2_grouplike(3);
    let st = word_elem(&fp, &[(0, 0), (1, 0)]);
    let sts = word_elem(&fp, &[(0, 0), (1, 0), (0, 0)]);
    assert!(matches!(
        st.mul(&sts),
        Err(Error::TruncationOverflow { needed: 5, bound: 3 })
    ));
}

#[test]
fn grouplike_letters_have_grouplike_coproduct() {
    let fp = z2_star_z2_grouplike(4);
    let s = fp.word_index(&vec![(0, 0)]).unwrap();
    let st = fp.word_index(&vec![(0, 0), (1, 0)]).unwrap();
    let cs = fp.coproduct_word(s).unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!(cs.get(&(s, s)), Some(&Q.one()));
    let cst = fp.coproduct_word(st).unwrap();
    assert_eq!(cst.len(), 1);
    assert_eq!(cst.get(&(st, st)), Some(&Q.one()));
}

#[test]
fn antipode_reverses_grouplike_words() {
    let fp = z2_star_z2_grouplike(4);
    let st = fp.word_index(&vec![(0, 0), (1, 0)]).unwrap();
    let ts = fp.word_index(&vec![(1, 0), (0, 0)]).unwrap();
    let s_img = fp.antipode_word(st).unwrap();
    assert_eq!(s_img, vec![(ts, Q.one())]);
}

#[test]
fn free_coproduct_is_coassociative_on_inbound_words() {
    let factors = vec![
        FreeFactor::hopf(Arc::new(sweedler())),
        FreeFactor::hopf(Arc::new(group_z2())),
    ];
    let fp = TruncatedFreeProduct::build(factors, 4).unwrap();
    for idx in 0..fp.basis_len() {
        if fp.basis_word(idx).len() > 2 {
            continue;
        }
        let mut lhs: std::collections::BTreeMap<(usize, usize, usize), Scalar> = Default::default();
        let mut rhs = lhs.clone();
        for ((a, b), c) in fp.coproduct_word(idx).unwrap() {
            for ((a1, a2), d) in fp.coproduct_word(a).unwrap() {
                let v = c.mul(&d);
                lhs.entry((a1, a2, b))
                    .and_modify(|e| *e = e.add(&v))
                    .or_insert(v);
            }
            for ((b1, b2), d) in fp.coproduct_word(b).unwrap() {
                let v = c.mul(&d);
                rhs.entry((a, b1, b2))
                    .and_modify(|e| *e = e.add(&v))
                    .or_insert(v);
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        assert_eq!(lhs, rhs, "word {}", fp.word_string(idx));
    }
}

#[test]
fn free_antipode_law_holds_on_inbound_words() {
    let factors = vec![
        FreeFactor::hopf(Arc::new(sweedler())),
        FreeFactor::hopf(Arc::new(group_z2())),
    ];
    let fp = TruncatedFreeProduct::build(factors, 6).unwrap();
    for idx in 0..fp.basis_len() {
        if fp.basis_word(idx).len() > 3 {
            continue;
        }
        // m(S⊗id)Δ(w) = ε(w)·1
        let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for ((a, b), c) in fp.coproduct_word(idx).unwrap() {
            let sa = fp.antipode_word(a).unwrap();
            let prod = fp.mul_sparse(&sa, &vec![(b, Q.one())]).unwrap();
            for (i, v) in prod {
                let add = c.mul(&v);
                acc.entry(i).and_modify(|e| *e = e.add(&add)).or_insert(add);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        let eps = fp.counit_word(idx).unwrap();
        if eps.is_zero() {
            assert!(acc.is_empty(), "word {}", fp.word_string(idx));
        } else {
            assert_eq!(acc.len(), 1);
            assert_eq!(acc.get(&0), Some(&eps));
        }
    }
}

#[test]
fn eta_of_identity_family_preserves_words() {
    let fam = builtin_family("fam:id:group:Z2").unwrap();
    let z2fam = z2_family(&fam, 5).unwrap();
    // σ x σ with x the ker-ε letter of H
    let sxs = z2fam.source.word_index(&vec![(0, 0), (1, 0), (0, 0)]).unwrap();
    let eta = &z2fam.maps[0];
    let img = eta.apply_word(sxs).unwrap();
    assert_eq!(img.len(), 1);
    assert_eq!(eta.target().word_string(img[0].0), "0:e0 1:e0 0:e0");
    // σ itself maps to σ
    let sigma = z2fam.source.word_index(&vec![(0, 0)]).unwrap();
    let img = eta.apply_word(sigma).unwrap();
    assert_eq!(img, vec![(sigma, Q.one())]);
}

#[test]
fn eta_of_counit_family_kills_conjugated_kernel_letters() {
    // η(σxσ) = ε(x)·σσ = 0 for x ∈ ker ε
    let fam = builtin_family("fam:counit:group:Z2").unwrap();
    let z2fam = z2_family(&fam, 5).unwrap();
    let sxs = z2fam.source.word_index(&vec![(0, 0), (1, 0), (0, 0)]).unwrap();
    let img = z2fam.maps[0].apply_word(sxs).unwrap();
    assert!(img.is_empty());
}

#[test]
fn eta_word_map_of_identity_is_identity_on_single_letters() {
    let fam = builtin_family("fam:id:group:Z2").unwrap();
    let z2fam = z2_family(&fam, 4).unwrap();
    let x = word_elem(&z2fam.source, &[(1, 0), (0, 0)]);
    let img = eta_word_evaluate(&z2fam, &Word::from_indices(&[(0, false)]), &x, &limits()).unwrap();
    let expected_idx = z2fam.maps[0].target().word_index(&vec![(1, 0), (0, 0)]).unwrap();
    assert_eq!(img, vec![(vec![expected_idx], Q.one())]);
}

#[test]
fn eta_word_map_sends_sigma_to_sigma_tensor_sigma() {
    let fam = builtin_family("fam:id:group:Z2").unwrap();
    let z2fam = z2_family(&fam, 4).unwrap();
    let sigma = word_elem(&z2fam.source, &[(0, 0)]);
    let w = Word::from_indices(&[(0, false), (0, false)]);
    let img = eta_word_evaluate(&z2fam, &w, &sigma, &limits()).unwrap();
    let sig_idx = z2fam.maps[0].target().word_index(&vec![(0, 0)]).unwrap();
    assert_eq!(img, vec![(vec![sig_idx, sig_idx], Q.one())]);
}

#[test]
fn eta_scan_separates_conjugated_kernel_elements() {
    // x = σx₀σ − σx₁σ for independent x₀, x₁ ∈ ker ε of k[Z2×Z2]
    let fam = builtin_family("fam:chars:Z2xZ2").unwrap();
    let z2fam = z2_family(&fam, 6).unwrap();
    let h = fam.domain().clone();
    let sigma = word_elem(&z2fam.source, &[(0, 0)]);
    // a − 1 and b − 1
    let x0 = inject_factor(&z2fam.source, 1, &Matrix::row_i64(Q, &[-1, 1, 0, 0]));
    let x1 = inject_factor(&z2fam.source, 1, &Matrix::row_i64(Q, &[-1, 0, 1, 0]));
    assert_eq!(h.dim(), 4);
    let conj = |v: &FPElement| sigma.mul(v).unwrap().mul(&sigma).unwrap();
    let x = conj(&x0).sub(&conj(&x1));
    assert!(!x.is_zero());
    let sep = z2_separation_scan(&z2fam, &x, 2, &limits()).unwrap().unwrap();
    assert!(sep.word.len() <= 2, "found {}", sep.word);
}

#[test]
fn embed_sigma_maps_letters_to_conjugated_blocks() {
    let h = Arc::new(group_z2());
    let hh = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        2,
    )
    .unwrap();
    let target = z2_free_product(&h, 6).unwrap();
    // second-copy letter ↦ σtσ
    let second = word_elem(&hh, &[(1, 0)]);
    let img = embed_sigma(&second, &target).unwrap();
    assert_eq!(img.to_pairs(), vec![("0:e0 1:e0 0:e0".to_string(), "1".to_string())]);
    // first-copy letter ↦ the letter itself
    let first = word_elem(&hh, &[(0, 0)]);
    let img = embed_sigma(&first, &target).unwrap();
    assert_eq!(img.to_pairs(), vec![("1:e0".to_string(), "1".to_string())]);
    // t₁·t₂ ↦ t σ t σ, length 4
    let prod = word_elem(&hh, &[(0, 0), (1, 0)]);
    let img = embed_sigma(&prod, &target).unwrap();
    assert_eq!(img.to_pairs(), vec![("1:e0 0:e0 1:e0 0:e0".to_string(), "1".to_string())]);
}

#[test]
fn embed_sigma_overflow_is_reported() {
    let h = Arc::new(group_z2());
    let hh = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        2,
    )
    .unwrap();
    let target = z2_free_product(&h, 3).unwrap();
    let prod = word_elem(&hh, &[(0, 0), (1, 0)]);
    assert!(matches!(
        embed_sigma(&prod, &target),
        Err(Error::TruncationOverflow { needed: 4, bound: 3 })
    ));
}

#[test]
fn embed_sigma_is_injective_on_the_truncated_domain() {
    let h = Arc::new(group_z2());
    let hh = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        2,
    )
    .unwrap();
    let target = z2_free_product(&h, 6).unwrap();
    let mut image = Matrix::zero(target.basis_len(), hh.basis_len(), Q);
    for j in 0..hh.basis_len() {
        let e = FPElement::from_terms(hh.clone(), &[(j, Q.one())]);
        for (i, c) in embed_sigma(&e, &target).unwrap().sparse() {
            image.set(i, j, c);
        }
    }
    assert_eq!(image.rank(), hh.basis_len());
}

#[test]
fn embed_tensor_square_sends_letters_to_single_copy_letters() {
    let h = Arc::new(sweedler());
    let k = Arc::new(group_z2());
    let hk = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(k.clone())],
        3,
    )
    .unwrap();
    let m = Arc::new(h.tensor(&k).unwrap());
    let mm = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(m.clone()), FreeFactor::hopf(m.clone())],
        3,
    )
    .unwrap();
    // an H-letter lands in copy 0 as a single letter, alternating words keep
    // their length
    let hletter = word_elem(&hk, &[(0, 0)]);
    let img = embed_tensor_square(&hletter, &mm).unwrap();
    for (i, _) in img.sparse() {
        let word = mm.basis_word(i);
        assert_eq!(word.len(), 1);
        assert_eq!(word[0].0, 0);
    }
    let hkh = word_elem(&hk, &[(0, 0), (1, 0), (0, 1)]);
    let img = embed_tensor_square(&hkh, &mm).unwrap();
    assert!(!img.is_zero());
    for (i, _) in img.sparse() {
        let word = mm.basis_word(i);
        assert_eq!(word.len(), 3);
        assert_eq!(word.iter().map(|l| l.0).collect::<Vec<_>>(), vec![0, 1, 0]);
    }
}

#[test]
fn embed_tensor_square_is_injective_and_multiplicative() {
    let h = Arc::new(group_z2());
    let k = Arc::new(group_z2z2());
    let hk = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(k.clone())],
        4,
    )
    .unwrap();
    let m = Arc::new(h.tensor(&k).unwrap());
    let mm = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(m.clone()), FreeFactor::hopf(m.clone())],
        4,
    )
    .unwrap();
    let mut image = Matrix::zero(mm.basis_len(), hk.basis_len(), Q);
    for j in 0..hk.basis_len() {
        let e = FPElement::from_terms(hk.clone(), &[(j, Q.one())]);
        for (i, c) in embed_tensor_square(&e, &mm).unwrap().sparse() {
            image.set(i, j, c);
        }
    }
    assert_eq!(image.rank(), hk.basis_len());

    for u in 0..hk.basis_len() {
        for v in 0..hk.basis_len() {
            if hk.basis_word(u).len() + hk.basis_word(v).len() > 4 {
                continue;
            }
            let eu = FPElement::from_terms(hk.clone(), &[(u, Q.one())]);
            let ev = FPElement::from_terms(hk.clone(), &[(v, Q.one())]);
            let lhs = embed_tensor_square(&eu.mul(&ev).unwrap(), &mm).unwrap();
            let rhs = embed_tensor_square(&eu, &mm)
                .unwrap()
                .mul(&embed_tensor_square(&ev, &mm).unwrap())
                .unwrap();
            assert_eq!(lhs.coords, rhs.coords, "({u},{v})");
        }
    }
}

#[test]
fn tensor_square_restriction_identity() {
    // (π_i ⊗ π_j)^{*2} restricted along the embedding equals π_i * π_j
    let fam_h = builtin_family("fam:id:group:Z2").unwrap();
    let fam_k = builtin_family("fam:char:Z2").unwrap();
    let h = fam_h.domain().clone();
    let k = fam_k.domain().clone();
    let bound = 2;
    let hk = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(k.clone())],
        bound,
    )
    .unwrap();
    let m = Arc::new(h.tensor(&k).unwrap());
    let mm = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(m.clone()), FreeFactor::hopf(m.clone())],
        bound,
    )
    .unwrap();
    let tensor = tensor_family(&fam_h, &fam_k).unwrap();
    let phi = tensor.maps()[0].clone();

    // targets: A_i * B_j and (A_i⊗B_j)^{*2}
    let ai = FreeFactor::from_carrier(fam_h.maps()[0].target());
    let bj = FreeFactor::from_carrier(fam_k.maps()[0].target());
    let ab = FreeFactor::from_carrier(phi.target());
    let target_small = TruncatedFreeProduct::build(vec![ai, bj], bound).unwrap();
    let target_big = TruncatedFreeProduct::build(vec![ab.clone(), ab], bound).unwrap();

    let small_map = FreeMap::new(
        hk.clone(),
        target_small.clone(),
        vec![
            (0, fam_h.maps()[0].matrix().clone()),
            (1, fam_k.maps()[0].matrix().clone()),
        ],
    )
    .unwrap();
    let big_map = FreeMap::new(
        mm.clone(),
        target_big.clone(),
        vec![(0, phi.matrix().clone()), (1, phi.matrix().clone())],
    )
    .unwrap();

    for j in 0..hk.basis_len() {
        let e = FPElement::from_terms(hk.clone(), &[(j, Q.one())]);
        let via_big = big_map.apply(&embed_tensor_square(&e, &mm).unwrap()).unwrap();
        let via_small = embed_tensor_square(&small_map.apply(&e).unwrap(), &target_big).unwrap();
        assert_eq!(via_big.coords, via_small.coords, "basis word {}", hk.word_string(j));
    }
}

#[test]
fn square_scan_separates_st_minus_ts() {
    let fam = builtin_family("fam:id:group:Z2").unwrap();
    let h = fam.domain().clone();
    let hh = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        6,
    )
    .unwrap();
    let st = word_elem(&hh, &[(0, 0), (1, 0)]);
    let ts = word_elem(&hh, &[(1, 0), (0, 0)]);
    let x = st.sub(&ts);
    let sep = square_separation_scan(&fam, &x, 3, &limits()).unwrap().unwrap();
    assert!(sep.word.len() <= 3, "found {}", sep.word);
}

#[test]
fn free_separation_on_z2_pair() {
    let fam = builtin_family("fam:id:group:Z2").unwrap();
    let h = fam.domain().clone();
    let hk = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        6,
    )
    .unwrap();
    let st = word_elem(&hk, &[(0, 0), (1, 0)]);
    let ts = word_elem(&hk, &[(1, 0), (0, 0)]);
    let x = st.sub(&ts);
    let sep = free_separation_test(&fam, &fam, &x, 3, &limits()).unwrap().unwrap();
    assert!(sep.word.len() <= 3, "found {}", sep.word);
}

#[test]
fn free_separation_rejects_non_if_families() {
    let good = builtin_family("fam:id:group:Z2").unwrap();
    let bad = builtin_family("fam:counit:group:Z2").unwrap();
    let h = good.domain().clone();
    let hk = TruncatedFreeProduct::build(
        vec![FreeFactor::hopf(h.clone()), FreeFactor::hopf(h.clone())],
        4,
    )
    .unwrap();
    let x = word_elem(&hk, &[(0, 0)]);
    assert!(matches!(
        free_separation_test(&good, &bad, &x, 3, &limits()),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn eta_resource_cap_is_enforced() {
    let fam = builtin_family("fam:id:group:Z2xZ2").unwrap();
    let z2fam = z2_family(&fam, 6).unwrap();
    let x = word_elem(&z2fam.source, &[(1, 0), (0, 0), (1, 1), (0, 0), (1, 2)]);
    let tight = Limits { cap_entries: 2 };
    let w = Word::from_indices(&[(0, false), (0, false), (0, false)]);
    assert!(matches!(
        eta_word_evaluate(&z2fam, &w, &x, &tight),
        Err(Error::ResourceCap { .. })
    ));
}
