//! Property tests for the exact linear algebra substrate.

use hopfimage::field::{FieldSpec, Scalar};
use hopfimage::matrix::{dense_to_sparse, kernel_of_columns, Matrix};
use hopfimage::subspace::Subspace;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
    ]
}

prop_compose! {
    fn matrix_strategy()(field in field_strategy(), rows in 1usize..5, cols in 1usize..5)
        (entries in prop::collection::vec(-4i64..=4, rows * cols),
         field in Just(field), rows in Just(rows), cols in Just(cols))
        -> Matrix
    {
        let mut m = Matrix::zero(rows, cols, field);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i / cols, i % cols, field.from_i64(e));
        }
        m
    }
}

prop_compose! {
    fn matrix_pair_strategy()(field in field_strategy(), cols in 1usize..5, rows_a in 1usize..5, rows_b in 1usize..5)
        (ea in prop::collection::vec(-4i64..=4, rows_a * cols),
         eb in prop::collection::vec(-4i64..=4, rows_b * cols),
         field in Just(field), cols in Just(cols), rows_a in Just(rows_a), rows_b in Just(rows_b))
        -> (Matrix, Matrix)
    {
        let mut a = Matrix::zero(rows_a, cols, field);
        for (i, e) in ea.into_iter().enumerate() {
            a.set(i / cols, i % cols, field.from_i64(e));
        }
        let mut b = Matrix::zero(rows_b, cols, field);
        for (i, e) in eb.into_iter().enumerate() {
            b.set(i / cols, i % cols, field.from_i64(e));
        }
        (a, b)
    }
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn row_space_invariant_under_row_operations(m in matrix_strategy(), scale in 1i64..4, from in 0usize..4, to in 0usize..4) {
        // adding a multiple of one row to another preserves the row space
        let rows = m.rows();
        let (from, to) = (from % rows, to % rows);
        prop_assume!(from != to);
        let mut modified = m.clone();
        let source_row = m.row(from).to_vec();
        let c = m.field().from_i64(scale);
        for (j, s) in source_row.iter().enumerate() {
            let cur = modified.get(to, j).add(&c.mul(s));
            modified.set(to, j, cur);
        }
        prop_assert_eq!(modified.rref(), m.rref());
    }

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix_strategy()) {
        let k = m.kernel_basis();
        for r in 0..k.rows() {
            let image = m.apply(k.row(r)).unwrap();
            prop_assert!(image.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn sparse_column_kernel_matches_dense(m in matrix_strategy()) {
        let cols: Vec<_> = (0..m.cols()).map(|c| dense_to_sparse(&m.col_vec(c))).collect();
        prop_assert_eq!(kernel_of_columns(&cols, m.field()), m.kernel_basis());
    }

    #[test]
    fn intersection_dimension_formula((a, b) in matrix_pair_strategy()) {
        let sa = Subspace::from_rows(&a);
        let sb = Subspace::from_rows(&b);
        let inter = sa.intersect(&sb).unwrap();
        let sum = sa.sum(&sb).unwrap();
        prop_assert_eq!(inter.dim() + sum.dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains(&inter) && sb.contains(&inter));
        prop_assert!(sum.contains(&sa) && sum.contains(&sb));
    }

    #[test]
    fn modular_law_with_contained_summand((a, b) in matrix_pair_strategy(), keep in prop::collection::vec(any::<bool>(), 6)) {
        let sa = Subspace::from_rows(&a);
        let sb = Subspace::from_rows(&b);
        // c ⊆ a spanned by a subset of a's basis rows
        let rows: Vec<Vec<Scalar>> = (0..sa.dim())
            .filter(|r| keep.get(*r).copied().unwrap_or(false))
            .map(|r| sa.basis().row(r).to_vec())
            .collect();
        let c = Subspace::from_rows(&Matrix::from_rows_with_cols(a.field(), rows, a.cols()));
        // a ∩ (b + c) = (a ∩ b) + c
        let lhs = sa.intersect(&sb.sum(&c).unwrap()).unwrap();
        let rhs = sa.intersect(&sb).unwrap().sum(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_projection_splits_the_ambient(m in matrix_strategy()) {
        let s = Subspace::from_rows(&m);
        let (proj, compl) = s.quotient_basis();
        // proj ∘ inclusion = identity on the complement
        let pc = proj.mul(&compl.transpose()).unwrap();
        prop_assert_eq!(pc, Matrix::identity(proj.rows(), m.field()));
        // the kernel of proj is exactly s
        let ker = Subspace::from_rows(&proj.kernel_basis());
        prop_assert_eq!(ker, s);
    }

    #[test]
    fn scalar_roundtrip_rational(num in -50i64..50, den in 1i64..20) {
        let q = FieldSpec::Rationals;
        let v = q.from_i64(num).div(&q.from_i64(den));
        prop_assert_eq!(q.parse(&v.to_canonical_string()).unwrap(), v);
    }

    #[test]
    fn scalar_roundtrip_prime_field(v in 0i64..7) {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = f7.from_i64(v);
        prop_assert_eq!(f7.parse(&s.to_canonical_string()).unwrap(), s);
    }
}
