//! Structural properties of the builtin Hopf algebras: axiom battery,
//! coassociativity of all Δ^{(4)} bracketings, duality, and the antipode as
//! a morphism into the op-cop structure.

use std::sync::Arc;

use hopfimage::algebra::{check_hopf, AlgebraMorphism, Carrier, HopfAlgebra};
use hopfimage::builtins::{builtin_algebra, group_z2, sweedler};
use hopfimage::field::FieldSpec;
use hopfimage::matrix::Matrix;

const Q: FieldSpec = FieldSpec::Rationals;

fn fixtures() -> Vec<(String, HopfAlgebra)> {
    [
        "group:Z2",
        "group:Z2xZ2",
        "group:S3",
        "dual:group:S3",
        "sweedler",
        "taft:3:2:F7",
        "tensor:group:Z2*group:S3",
        "tensor:sweedler*sweedler",
    ]
    .into_iter()
    .map(|n| (n.to_string(), builtin_algebra(n).unwrap()))
    .collect()
}

#[test]
fn all_fixtures_pass_the_axiom_battery() {
    for (name, h) in fixtures() {
        let report = check_hopf(&h);
        assert!(report.all_passed(), "{name}: {:?}", report.first_failure());
    }
}

#[test]
fn antipodes_are_invertible() {
    for (name, h) in fixtures() {
        assert_eq!(h.antipode().rank(), h.dim(), "{name}");
    }
}

/// Δ^{(4)} computed along every insertion order of Δ agrees.
#[test]
fn iterated_coproduct_bracketings_agree() {
    for name in ["group:S3", "sweedler", "taft:3:2:F7"] {
        let h = builtin_algebra(name).unwrap();
        let n = h.dim();
        let field = h.field();
        let delta = h.comult_matrix();
        let reference = h.iterated_coproduct(4);
        // extend Δ^{(k)} to Δ^{(k+1)} by applying Δ at leg p
        for p2 in 0..2 {
            for p3 in 0..3 {
                let mut current = delta.clone();
                for (step, p) in [(2usize, p2), (3usize, p3)] {
                    let left = Matrix::identity(n.pow(p as u32), field);
                    let right = Matrix::identity(n.pow((step - 1 - p) as u32), field);
                    let op = left.kron(&delta).kron(&right);
                    current = op.mul(&current).unwrap();
                }
                assert_eq!(current, reference, "{name} route ({p2},{p3})");
            }
        }
    }
}

#[test]
fn tensor_product_is_associative_on_the_nose() {
    let a = group_z2();
    let b = sweedler();
    let c = builtin_algebra("group:S3").unwrap();
    let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
    let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn op_cop_and_opposite_are_involutions() {
    for (name, h) in fixtures() {
        assert_eq!(h.op_cop().op_cop(), h, "{name}");
        assert_eq!(h.algebra().opposite().opposite(), *h.algebra(), "{name}");
    }
}

#[test]
fn antipode_is_a_hopf_morphism_into_op_cop() {
    for name in ["group:S3", "sweedler", "taft:3:2:F7"] {
        let h = Arc::new(builtin_algebra(name).unwrap());
        let target = Arc::new(h.op_cop());
        let s = AlgebraMorphism::new(
            Carrier::Hopf(h.clone()),
            Carrier::Hopf(target),
            h.antipode().clone(),
        )
        .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(s.is_hopf(), "{name}");
    }
}

#[test]
fn tensor_of_counits_is_the_counit_of_the_tensor() {
    let h = sweedler();
    let k = group_z2();
    let hk = h.tensor(&k).unwrap();
    let eps_h = AlgebraMorphism::counit_morphism(&Arc::new(h));
    let eps_k = AlgebraMorphism::counit_morphism(&Arc::new(k));
    let tensored = eps_h.tensor(&eps_k).unwrap();
    assert_eq!(tensored.matrix().row(0), hk.counit());
}

#[test]
fn tensor_of_identities_is_the_identity() {
    let id_h = AlgebraMorphism::identity(Carrier::hopf(sweedler()));
    let id_k = AlgebraMorphism::identity(Carrier::hopf(group_z2()));
    let t = id_h.tensor(&id_k).unwrap();
    assert_eq!(t.matrix(), &Matrix::identity(8, Q));
    assert!(t.is_hopf());
}

/// The dual of kℤ₂ is isomorphic to kℤ₂; a brute-force search over small
/// integer matrices finds a Hopf isomorphism.
#[test]
fn dual_of_z2_group_algebra_is_isomorphic_to_itself() {
    let h = Arc::new(group_z2());
    let dual = Arc::new(h.dual());
    let candidates: Vec<i64> = vec![-1, 0, 1];
    let mut found = None;
    'search: for a in &candidates {
        for b in &candidates {
            for c in &candidates {
                for d in &candidates {
                    let m = Matrix::from_i64_rows(Q, &[&[*a, *b], &[*c, *d]]);
                    if m.rank() != 2 {
                        continue;
                    }
                    if let Ok(morph) = AlgebraMorphism::new(
                        Carrier::Hopf(h.clone()),
                        Carrier::Hopf(dual.clone()),
                        m,
                    ) {
                        if morph.is_hopf() {
                            found = Some(morph);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    let iso = found.expect("a Hopf isomorphism kZ2 → (kZ2)^* must exist");
    assert_eq!(iso.matrix().rank(), 2);
}

#[test]
fn duals_of_cocommutative_algebras_are_commutative() {
    for name in ["group:Z2xZ2", "group:S3"] {
        let h = builtin_algebra(name).unwrap();
        assert!(h.dual().algebra().is_commutative(), "{name}");
    }
}
