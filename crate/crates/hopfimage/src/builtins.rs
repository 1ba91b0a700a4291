//! Builtin fixtures: group algebras, Sweedler/Taft algebras, their standard
//! representations, and the name registry used by the CLI
//! ("group:Z2", "sweedler", "taft:3:2:F7", "dual:<name>",
//! "tensor:<name>*<name>", and "fam:…" for morphism families).

use std::sync::Arc;

use crate::algebra::{pair_product, Algebra, AlgebraMorphism, Carrier, HopfAlgebra, PairTerms};
use crate::error::{Error, Result};
use crate::faithful::MorphismFamily;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// Group algebra kG from a multiplication table: basis = group elements,
/// Δg = g⊗g, ε(g) = 1, S(g) = g⁻¹. The table is validated as a group.
pub fn group_algebra(table: &[Vec<usize>], field: FieldSpec) -> Result<HopfAlgebra> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range in row {i}")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(Error::NotAGroup(format!("associativity fails at ({i},{j},{k})")));
                }
            }
        }
    }
    let mut inverse = vec![usize::MAX; n];
    for i in 0..n {
        inverse[i] = (0..n)
            .find(|&j| table[i][j] == identity && table[j][i] == identity)
            .ok_or_else(|| Error::NotAGroup(format!("element {i} has no inverse")))?;
    }

    let mut mult = vec![field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            mult[(i * n + j) * n + table[i][j]] = field.one();
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[identity] = field.one();
    let algebra = Algebra::new(field, n, mult, unit);

    let mut comult = vec![field.zero(); n * n * n];
    for g in 0..n {
        comult[g * n * n + g * n + g] = field.one();
    }
    let counit = vec![field.one(); n];
    let mut antipode = Matrix::zero(n, n, field);
    for g in 0..n {
        antipode.set(inverse[g], g, field.one());
    }
    Ok(HopfAlgebra::from_parts(algebra, comult, counit, antipode))
}

pub fn z2_table() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 0]]
}

pub fn z2z2_table() -> Vec<Vec<usize>> {
    // elements 1, a, b, ab with index xor
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// S₃ as permutations of {0,1,2} in the order
/// e, (01), (02), (12), (012), (021); table[i][j] = p_i ∘ p_j.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms = s3_perms();
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed = [p[q[0]], p[q[1]], p[q[2]]];
                    index_of(&composed)
                })
                .collect()
        })
        .collect()
}

fn s3_perms() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ]
}

pub fn group_z2() -> HopfAlgebra {
    group_algebra(&z2_table(), FieldSpec::Rationals).expect("valid table")
}

pub fn group_z2z2() -> HopfAlgebra {
    group_algebra(&z2z2_table(), FieldSpec::Rationals).expect("valid table")
}

pub fn group_s3() -> HopfAlgebra {
    group_algebra(&s3_table(), FieldSpec::Rationals).expect("valid table")
}

/// Sweedler's 4-dimensional Hopf algebra over ℚ: the Taft algebra with
/// n = 2, q = −1.
pub fn sweedler() -> HopfAlgebra {
    taft(2, FieldSpec::Rationals.from_i64(-1)).expect("q = -1 is a primitive square root of 1")
}

/// Taft algebra of dimension n² with basis x^a g^b (index a·n + b) and
/// relations gⁿ = 1, xⁿ = 0, xg = q·gx; Δx = x⊗1 + g⊗x, Δg = g⊗g,
/// S(x) = −g⁻¹x, S(g) = g⁻¹. Requires q to be a primitive n-th root of
/// unity in its field.
pub fn taft(n: usize, q: Scalar) -> Result<HopfAlgebra> {
    let field = q.field();
    if q.is_zero() || !q.pow(n as u64).is_one() {
        return Err(Error::NotPrimitiveRoot(q.to_canonical_string(), n));
    }
    for k in 1..n {
        if q.pow(k as u64).is_one() {
            return Err(Error::NotPrimitiveRoot(q.to_canonical_string(), n));
        }
    }
    let dim = n * n;
    let idx = |a: usize, b: usize| a * n + b;
    let q_inv = q.inv();

    let mut mult = vec![field.zero(); dim * dim * dim];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a + c < n {
                        let coeff = q_inv.pow((b * c) as u64);
                        let (i, j, k) = (idx(a, b), idx(c, d), idx(a + c, (b + d) % n));
                        mult[(i * dim + j) * dim + k] = coeff;
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); dim];
    unit[idx(0, 0)] = field.one();
    let algebra = Algebra::new(field, dim, mult, unit);

    // Δ on the generators, extended multiplicatively.
    let mut dx = PairTerms::new();
    dx.insert((idx(1, 0), idx(0, 0)), field.one());
    dx.insert((idx(0, 1), idx(1, 0)), field.one());
    let mut dg = PairTerms::new();
    dg.insert((idx(0, 1), idx(0, 1)), field.one());
    let mut comult = vec![field.zero(); dim * dim * dim];
    for a in 0..n {
        for b in 0..n {
            let mut acc = PairTerms::new();
            acc.insert((idx(0, 0), idx(0, 0)), field.one());
            for _ in 0..a {
                acc = pair_product(&algebra, &acc, &dx);
            }
            for _ in 0..b {
                acc = pair_product(&algebra, &acc, &dg);
            }
            for ((k, l), c) in acc {
                comult[idx(a, b) * dim * dim + k * dim + l] = c;
            }
        }
    }

    let mut counit = vec![field.zero(); dim];
    for b in 0..n {
        counit[idx(0, b)] = field.one();
    }

    // S on the generators, extended anti-multiplicatively:
    // S(x^a g^b) = S(g)^b · S(x)^a.
    let basis_vec = |i: usize| {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        v
    };
    let sg = basis_vec(idx(0, (n - 1) % n));
    let g_pow = basis_vec(idx(0, (n - 1) % n));
    let sx: Vec<Scalar> = algebra
        .multiply(&g_pow, &basis_vec(idx(1, 0)))
        .iter()
        .map(Scalar::neg)
        .collect();
    let mut antipode = Matrix::zero(dim, dim, field);
    for a in 0..n {
        for b in 0..n {
            let mut acc = basis_vec(idx(0, 0));
            for _ in 0..b {
                acc = algebra.multiply(&acc, &sg);
            }
            for _ in 0..a {
                acc = algebra.multiply(&acc, &sx);
            }
            for (k, c) in acc.into_iter().enumerate() {
                antipode.set(k, idx(a, b), c);
            }
        }
    }
    Ok(HopfAlgebra::from_parts(algebra, comult, counit, antipode))
}

// ---------------------------------------------------------------------------
// Standard representations used as fixture families
// ---------------------------------------------------------------------------

/// One-dimensional representation of a Hopf algebra from its values on the
/// basis; the target is the trivial Hopf algebra k.
pub fn character(domain: &Arc<HopfAlgebra>, values: &[i64]) -> Result<AlgebraMorphism> {
    let field = domain.field();
    let row: Vec<Scalar> = values.iter().map(|&v| field.from_i64(v)).collect();
    AlgebraMorphism::new(
        Carrier::Hopf(domain.clone()),
        Carrier::hopf(HopfAlgebra::trivial(field)),
        Matrix::from_rows(field, vec![row]),
    )
}

/// Representation of a group algebra into M_k from the images of the group
/// basis; columns are the row-major vectorizations.
pub fn matrix_rep(domain: &Arc<HopfAlgebra>, k: usize, images: &[Matrix]) -> Result<AlgebraMorphism> {
    let field = domain.field();
    let n = domain.dim();
    assert_eq!(images.len(), n);
    let mut matrix = Matrix::zero(k * k, n, field);
    for (j, img) in images.iter().enumerate() {
        assert_eq!((img.rows(), img.cols()), (k, k));
        for a in 0..k {
            for b in 0..k {
                matrix.set(a * k + b, j, img.get(a, b).clone());
            }
        }
    }
    AlgebraMorphism::new(
        Carrier::Hopf(domain.clone()),
        Carrier::plain(Algebra::matrix_algebra(k, field)),
        matrix,
    )
}

/// The 2-dimensional irreducible representation of S₃ over ℚ, acting on
/// {(x₀,x₁,x₂) : Σx = 0} in the basis v₁ = e₀−e₁, v₂ = e₁−e₂.
pub fn s3_irrep2_images() -> Vec<Matrix> {
    let q = FieldSpec::Rationals;
    s3_perms()
        .iter()
        .map(|p| {
            let image_of = |from: usize, to: usize| {
                // e_{p(from)} − e_{p(to)} in v-coordinates (α, β) with the
                // e-vector (c₀,c₁,c₂) ↦ (c₀, −c₂)
                let mut c = [0i64; 3];
                c[p[from]] += 1;
                c[p[to]] -= 1;
                (c[0], -c[2])
            };
            let (a1, b1) = image_of(0, 1);
            let (a2, b2) = image_of(1, 2);
            Matrix::from_i64_rows(q, &[&[a1, a2], &[b1, b2]])
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Name registry
// ---------------------------------------------------------------------------

fn parse_field_suffix(name: &str) -> Result<(&str, FieldSpec)> {
    match name.split_once('@') {
        Some((base, f)) => {
            let p: u64 = f
                .strip_prefix('F')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad field suffix in {name:?}")))?;
            Ok((base, FieldSpec::prime(p)?))
        }
        None => Ok((name, FieldSpec::Rationals)),
    }
}

/// Resolves a builtin Hopf algebra name. Group algebras accept an optional
/// `@Fp` suffix; Taft algebras are `taft:n:q` over ℚ or `taft:n:q:Fp`.
pub fn builtin_algebra(name: &str) -> Result<HopfAlgebra> {
    if let Some(rest) = name.strip_prefix("dual:") {
        return Ok(builtin_algebra(rest)?.dual());
    }
    if let Some(rest) = name.strip_prefix("tensor:") {
        let (a, b) = rest
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("tensor name needs '*': {name:?}")))?;
        return builtin_algebra(a)?.tensor(&builtin_algebra(b)?);
    }
    if let Some(rest) = name.strip_prefix("taft:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let (n, q_str, field) = match parts.as_slice() {
            [n, q] => (n, q, FieldSpec::Rationals),
            [n, q, f] => {
                let p: u64 = f
                    .strip_prefix('F')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad Taft field in {name:?}")))?;
                (n, q, FieldSpec::prime(p)?)
            }
            _ => return Err(Error::Parse(format!("bad Taft name {name:?}"))),
        };
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad Taft size in {name:?}")))?;
        return taft(n, field.parse(q_str)?);
    }
    let (base, field) = parse_field_suffix(name)?;
    match base {
        "group:Z2" => group_algebra(&z2_table(), field),
        "group:Z2xZ2" => group_algebra(&z2z2_table(), field),
        "group:S3" => group_algebra(&s3_table(), field),
        "sweedler" => {
            if field != FieldSpec::Rationals {
                return Err(Error::Parse("sweedler is a ℚ fixture; use taft:2:q:Fp instead".into()));
            }
            Ok(sweedler())
        }
        _ => Err(Error::Parse(format!("unknown builtin algebra {name:?}"))),
    }
}

/// Resolves a builtin morphism family name (see the README for the list).
pub fn builtin_family(name: &str) -> Result<MorphismFamily> {
    let rest = name
        .strip_prefix("fam:")
        .ok_or_else(|| Error::Parse(format!("family names start with \"fam:\": {name:?}")))?;
    if let Some(alg) = rest.strip_prefix("id:") {
        let h = Arc::new(builtin_algebra(alg)?);
        let id = AlgebraMorphism::identity(Carrier::Hopf(h.clone()));
        return MorphismFamily::new(h, vec![id]);
    }
    if let Some(alg) = rest.strip_prefix("counit:") {
        let h = Arc::new(builtin_algebra(alg)?);
        let eps = AlgebraMorphism::counit_morphism(&h);
        return MorphismFamily::new(h, vec![eps]);
    }
    match rest {
        "char:Z2" => {
            let h = Arc::new(group_z2());
            let chi = character(&h, &[1, -1])?;
            MorphismFamily::new(h, vec![chi])
        }
        "sign:S3" => {
            let h = Arc::new(group_s3());
            let sign = character(&h, &[1, -1, -1, -1, 1, 1])?;
            MorphismFamily::new(h, vec![sign])
        }
        "irrep2:S3" => {
            let h = Arc::new(group_s3());
            let rho = matrix_rep(&h, 2, &s3_irrep2_images())?;
            MorphismFamily::new(h, vec![rho])
        }
        "irreps:S3" => {
            let h = Arc::new(group_s3());
            let triv = character(&h, &[1, 1, 1, 1, 1, 1])?;
            let sign = character(&h, &[1, -1, -1, -1, 1, 1])?;
            let rho = matrix_rep(&h, 2, &s3_irrep2_images())?;
            MorphismFamily::new(h, vec![triv, sign, rho])
        }
        "signquot:S3" => {
            let h = Arc::new(group_s3());
            let target = Arc::new(group_z2());
            // e and the 3-cycles map to 1̄, transpositions to the generator
            let matrix = Matrix::from_i64_rows(
                FieldSpec::Rationals,
                &[&[1, 0, 0, 0, 1, 1], &[0, 1, 1, 1, 0, 0]],
            );
            let q = AlgebraMorphism::new(Carrier::Hopf(h.clone()), Carrier::Hopf(target), matrix)?;
            MorphismFamily::new(h, vec![q])
        }
        "char1:Z2xZ2" | "char2:Z2xZ2" | "chars:Z2xZ2" | "allchars:Z2xZ2" => {
            let h = Arc::new(group_z2z2());
            let chi1 = character(&h, &[1, -1, 1, -1])?;
            let chi2 = character(&h, &[1, 1, -1, -1])?;
            let maps = match rest {
                "char1:Z2xZ2" => vec![chi1],
                "char2:Z2xZ2" => vec![chi2],
                "chars:Z2xZ2" => vec![chi1, chi2],
                _ => {
                    let eps = character(&h, &[1, 1, 1, 1])?;
                    let chi12 = character(&h, &[1, -1, -1, 1])?;
                    vec![eps, chi1, chi2, chi12]
                }
            };
            MorphismFamily::new(h, maps)
        }
        "quotients:Z2xZ2" => {
            let h = Arc::new(group_z2z2());
            let target = Arc::new(group_z2());
            // kill a (index 1): 1,a ↦ 1̄ and b,ab ↦ t
            let qa = AlgebraMorphism::new(
                Carrier::Hopf(h.clone()),
                Carrier::Hopf(target.clone()),
                Matrix::from_i64_rows(FieldSpec::Rationals, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
            )?;
            // kill b (index 2)
            let qb = AlgebraMorphism::new(
                Carrier::Hopf(h.clone()),
                Carrier::Hopf(target),
                Matrix::from_i64_rows(FieldSpec::Rationals, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]),
            )?;
            MorphismFamily::new(h, vec![qa, qb])
        }
        "rep2:sweedler" => {
            // basis 1, g, x, xg: g ↦ diag(1,−1), x ↦ E01, xg ↦ −E01
            let h = Arc::new(sweedler());
            let q = FieldSpec::Rationals;
            let images = vec![
                Matrix::from_i64_rows(q, &[&[1, 0], &[0, 1]]),
                Matrix::from_i64_rows(q, &[&[1, 0], &[0, -1]]),
                Matrix::from_i64_rows(q, &[&[0, 1], &[0, 0]]),
                Matrix::from_i64_rows(q, &[&[0, -1], &[0, 0]]),
            ];
            let rho = matrix_rep(&h, 2, &images)?;
            MorphismFamily::new(h, vec![rho])
        }
        _ => Err(Error::Parse(format!("unknown builtin family {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_hopf;

    #[test]
    fn z2_group_algebra_shape() {
        let h = group_z2();
        assert_eq!(h.dim(), 2);
        assert!(check_hopf(&h).all_passed());
        // t² = 1 and S(t) = t
        assert_eq!(h.algebra().mult_row(1, 1)[0], FieldSpec::Rationals.one());
        assert_eq!(*h.antipode(), Matrix::identity(2, FieldSpec::Rationals));
    }

    #[test]
    fn z2z2_antipode_is_identity() {
        let h = group_z2z2();
        assert!(check_hopf(&h).all_passed());
        assert_eq!(*h.antipode(), Matrix::identity(4, FieldSpec::Rationals));
    }

    #[test]
    fn s3_antipode_is_inversion_permutation() {
        let h = group_s3();
        assert!(check_hopf(&h).all_passed());
        let table = s3_table();
        for g in 0..6 {
            let ginv = (0..6).find(|&j| table[g][j] == 0).unwrap();
            let col = h.antipode().col_vec(g);
            for (i, v) in col.iter().enumerate() {
                assert_eq!(!v.is_zero(), i == ginv);
            }
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut table = s3_table();
        table[1][2] = 1; // breaks the latin-square/associativity structure
        assert!(group_algebra(&table, FieldSpec::Rationals).is_err());
    }

    #[test]
    fn sweedler_passes_and_s2_not_identity() {
        let h = sweedler();
        let report = check_hopf(&h);
        assert!(report.all_passed(), "{:?}", report.first_failure());
        assert!(report.infos.iter().any(|i| i == "S^2 != id"));
    }

    #[test]
    fn taft3_over_f7_passes() {
        let f7 = FieldSpec::prime(7).unwrap();
        let h = taft(3, f7.from_i64(2)).unwrap();
        assert_eq!(h.dim(), 9);
        let report = check_hopf(&h);
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn taft3_over_q_has_no_root() {
        for q in [2i64, -1, 3] {
            let err = taft(3, FieldSpec::Rationals.from_i64(q));
            assert!(matches!(err, Err(Error::NotPrimitiveRoot(..))));
        }
    }

    #[test]
    fn tensor_of_z2_is_z2xz2() {
        let t = group_z2().tensor(&group_z2()).unwrap();
        assert_eq!(t, group_z2z2());
    }

    #[test]
    fn builtin_names_resolve() {
        for name in [
            "group:Z2",
            "group:Z2xZ2",
            "group:S3",
            "sweedler",
            "taft:3:2:F7",
            "dual:group:S3",
            "tensor:group:Z2*group:S3",
            "group:Z2@F7",
        ] {
            let h = builtin_algebra(name).unwrap();
            assert!(check_hopf(&h).all_passed(), "{name}");
        }
        assert!(builtin_algebra("taft:3:2").is_err());
        assert!(builtin_algebra("nope").is_err());
    }

    #[test]
    fn builtin_families_resolve() {
        for name in [
            "fam:id:group:Z2",
            "fam:counit:sweedler",
            "fam:char:Z2",
            "fam:sign:S3",
            "fam:irrep2:S3",
            "fam:irreps:S3",
            "fam:signquot:S3",
            "fam:chars:Z2xZ2",
            "fam:allchars:Z2xZ2",
            "fam:quotients:Z2xZ2",
            "fam:rep2:sweedler",
        ] {
            let fam = builtin_family(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!fam.is_empty(), "{name}");
        }
    }

    #[test]
    fn hopf_flags_of_fixture_families() {
        assert!(builtin_family("fam:id:group:S3").unwrap().hopf_family());
        assert!(builtin_family("fam:quotients:Z2xZ2").unwrap().hopf_family());
        assert!(builtin_family("fam:signquot:S3").unwrap().hopf_family());
        assert!(builtin_family("fam:counit:group:Z2").unwrap().hopf_family());
        // characters and matrix representations are algebra maps only
        assert!(!builtin_family("fam:chars:Z2xZ2").unwrap().hopf_family());
        assert!(!builtin_family("fam:irrep2:S3").unwrap().hopf_family());
        assert!(!builtin_family("fam:rep2:sweedler").unwrap().hopf_family());
    }
}
