//! JSON schema for algebras, morphisms, and families.
//!
//! Scalars serialize as strings ("a" or "a/b" over ℚ, a decimal residue
//! over 𝔽_p); matrices as nested row-major arrays; the comultiplication as
//! one n²-vector per basis element. References are either builtin names
//! ("group:Z2", "fam:chars:Z2xZ2"), file paths, or inline objects.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_algebra, check_hopf, Algebra, AlgebraMorphism, Carrier, HopfAlgebra};
use crate::builtins;
use crate::error::{Error, Result};
use crate::faithful::MorphismFamily;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
}

impl FieldJson {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        match self.kind.as_str() {
            "Q" => Ok(FieldSpec::Rationals),
            "Fp" => {
                let p = self.p.ok_or_else(|| Error::Parse("Fp needs a modulus p".into()))?;
                FieldSpec::prime(p)
            }
            other => Err(Error::Parse(format!("unknown field kind {other:?}"))),
        }
    }

    pub fn of(field: FieldSpec) -> FieldJson {
        match field {
            FieldSpec::Rationals => FieldJson { kind: "Q".into(), p: None },
            FieldSpec::PrimeField(p) => FieldJson { kind: "Fp".into(), p: Some(p) },
        }
    }
}

/// Algebra or Hopf algebra; the coalgebra fields are optional and must be
/// given together.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub dim: usize,
    pub unit: Vec<String>,
    /// mult[i][j] = structure-constant vector of e_i·e_j.
    pub mult: Vec<Vec<Vec<String>>>,
    /// comult[j] = the n²-vector of Δ(e_j) over the left-major pair basis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub comult: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counit: Option<Vec<String>>,
    /// Row-major matrix; column j is S(e_j).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub antipode: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(Box<AlgebraJson>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    /// target_dim × source_dim, row-major.
    pub matrix: Vec<Vec<String>>,
    pub hopf: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismRef {
    Name(String),
    Inline(Box<MorphismJson>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub domain: AlgebraRef,
    pub maps: Vec<MorphismRef>,
}

fn parse_scalars(field: FieldSpec, strings: &[String]) -> Result<Vec<Scalar>> {
    strings.iter().map(|s| field.parse(s)).collect()
}

fn scalars_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_canonical_string).collect()
}

fn parse_matrix(field: FieldSpec, rows: &[Vec<String>], shape: (usize, usize)) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Parse(format!(
            "matrix shape mismatch: expected {}x{}",
            shape.0, shape.1
        )));
    }
    let mut parsed = Vec::with_capacity(shape.0);
    for r in rows {
        parsed.push(parse_scalars(field, r)?);
    }
    Ok(Matrix::from_rows(field, parsed))
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| scalars_to_strings(m.row(r))).collect()
}

pub fn carrier_to_json(c: &Carrier) -> AlgebraJson {
    let a = c.algebra();
    let n = a.dim();
    let mult = (0..n)
        .map(|i| (0..n).map(|j| scalars_to_strings(a.mult_row(i, j))).collect())
        .collect();
    let mut out = AlgebraJson {
        field: FieldJson::of(a.field()),
        dim: n,
        unit: scalars_to_strings(a.unit()),
        mult,
        comult: None,
        counit: None,
        antipode: None,
    };
    if let Some(h) = c.hopf_structure() {
        out.comult = Some(
            (0..n)
                .map(|j| scalars_to_strings(&h.comult_tensor()[j * n * n..(j + 1) * n * n]))
                .collect(),
        );
        out.counit = Some(scalars_to_strings(h.counit()));
        out.antipode = Some(matrix_to_rows(h.antipode()));
    }
    out
}

/// Builds the carrier; with `verify` the full axiom battery must pass.
pub fn json_to_carrier(j: &AlgebraJson, verify: bool) -> Result<Carrier> {
    let field = j.field.to_spec()?;
    let n = j.dim;
    if j.mult.len() != n || j.mult.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("mult must be an n×n array of n-vectors".into()));
    }
    let mut mult = Vec::with_capacity(n * n * n);
    for row in &j.mult {
        for cell in row {
            if cell.len() != n {
                return Err(Error::Parse("mult entries must be n-vectors".into()));
            }
            mult.extend(parse_scalars(field, cell)?);
        }
    }
    let unit = parse_scalars(field, &j.unit)?;
    if unit.len() != n {
        return Err(Error::Parse("unit must be an n-vector".into()));
    }
    let algebra = Algebra::new(field, n, mult, unit);

    let carrier = match (&j.comult, &j.counit, &j.antipode) {
        (None, None, None) => Carrier::plain(algebra),
        (Some(cm), Some(cu), Some(s)) => {
            if cm.len() != n || cm.iter().any(|c| c.len() != n * n) {
                return Err(Error::Parse("comult must be n vectors of length n²".into()));
            }
            let mut comult = Vec::with_capacity(n * n * n);
            for col in cm {
                comult.extend(parse_scalars(field, col)?);
            }
            let counit = parse_scalars(field, cu)?;
            if counit.len() != n {
                return Err(Error::Parse("counit must be an n-vector".into()));
            }
            let antipode = parse_matrix(field, s, (n, n))?;
            Carrier::hopf(HopfAlgebra::from_parts(algebra, comult, counit, antipode))
        }
        _ => {
            return Err(Error::Parse(
                "comult, counit, antipode must be given together".into(),
            ))
        }
    };
    if verify {
        let report = match &carrier {
            Carrier::Plain(a) => check_algebra(a),
            Carrier::Hopf(h) => check_hopf(h),
        };
        if let Some(fail) = report.first_failure() {
            return Err(Error::AxiomViolation {
                axiom: fail.axiom.into(),
                witness: fail.witness.clone().unwrap_or_default(),
            });
        }
    }
    Ok(carrier)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Resolves an algebra reference: builtin name, then file path, then inline.
pub fn resolve_algebra_ref(r: &AlgebraRef, verify: bool) -> Result<Carrier> {
    match r {
        AlgebraRef::Name(name) => {
            match builtins::builtin_algebra(name) {
                Ok(h) => Ok(Carrier::hopf(h)),
                Err(builtin_err) => {
                    let path = Path::new(name);
                    if path.exists() {
                        let j: AlgebraJson = read_json(path)?;
                        json_to_carrier(&j, verify)
                    } else {
                        Err(builtin_err)
                    }
                }
            }
        }
        AlgebraRef::Inline(j) => json_to_carrier(j, verify),
    }
}

pub fn json_to_morphism(j: &MorphismJson, verify: bool) -> Result<AlgebraMorphism> {
    let source = resolve_algebra_ref(&j.source, verify)?;
    let target = resolve_algebra_ref(&j.target, verify)?;
    let matrix = parse_matrix(source.field(), &j.matrix, (target.dim(), source.dim()))?;
    if verify {
        let m = AlgebraMorphism::new(source, target, matrix)?;
        if j.hopf && !m.is_hopf() {
            return Err(Error::AxiomViolation {
                axiom: "declared hopf flag not satisfied".into(),
                witness: vec![],
            });
        }
        Ok(m)
    } else {
        Ok(AlgebraMorphism::new_unchecked(source, target, matrix, j.hopf))
    }
}

pub fn morphism_to_json(m: &AlgebraMorphism) -> MorphismJson {
    MorphismJson {
        source: AlgebraRef::Inline(Box::new(carrier_to_json(m.source()))),
        target: AlgebraRef::Inline(Box::new(carrier_to_json(m.target()))),
        matrix: matrix_to_rows(m.matrix()),
        hopf: m.is_hopf(),
    }
}

pub fn json_to_family(j: &FamilyJson, verify: bool) -> Result<MorphismFamily> {
    let domain = resolve_algebra_ref(&j.domain, verify)?;
    let Carrier::Hopf(h) = domain else {
        return Err(Error::Parse("family domain must be a Hopf algebra".into()));
    };
    let mut maps = Vec::with_capacity(j.maps.len());
    for r in &j.maps {
        maps.push(match r {
            MorphismRef::Name(name) => {
                let path = Path::new(name);
                if path.exists() {
                    let mj: MorphismJson = read_json(path)?;
                    json_to_morphism(&mj, verify)?
                } else {
                    return Err(Error::Parse(format!("morphism file not found: {name}")));
                }
            }
            MorphismRef::Inline(mj) => json_to_morphism(mj, verify)?,
        });
    }
    MorphismFamily::new(Arc::new(h.as_ref().clone()), maps)
}

/// Any of the three input shapes, detected by their mandatory keys.
#[derive(Debug)]
pub enum ParsedInput {
    Algebra(Carrier),
    Morphism(AlgebraMorphism),
    Family(MorphismFamily),
}

pub fn parse_input_file(path: &Path, verify: bool) -> Result<ParsedInput> {
    let value: serde_json::Value = read_json(path)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{}: expected a JSON object", path.display())))?;
    if obj.contains_key("maps") {
        let j: FamilyJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(ParsedInput::Family(json_to_family(&j, verify)?))
    } else if obj.contains_key("matrix") {
        let j: MorphismJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(ParsedInput::Morphism(json_to_morphism(&j, verify)?))
    } else if obj.contains_key("mult") {
        let j: AlgebraJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(ParsedInput::Algebra(json_to_carrier(&j, verify)?))
    } else {
        Err(Error::Parse(format!(
            "{}: not an algebra, morphism, or family object",
            path.display()
        )))
    }
}

/// Resolves a family given on the command line: builtin "fam:…" name or a
/// JSON file path.
pub fn resolve_family(name: &str, verify: bool) -> Result<MorphismFamily> {
    if name.starts_with("fam:") {
        return builtins::builtin_family(name);
    }
    let path = Path::new(name);
    if path.exists() {
        match parse_input_file(path, verify)? {
            ParsedInput::Family(f) => Ok(f),
            ParsedInput::Morphism(m) => {
                let Carrier::Hopf(h) = m.source().clone() else {
                    return Err(Error::Parse("morphism source must be a Hopf algebra".into()));
                };
                MorphismFamily::new(h, vec![m])
            }
            ParsedInput::Algebra(_) => {
                Err(Error::Parse(format!("{name}: expected a family, found an algebra")))
            }
        }
    } else {
        Err(Error::Parse(format!("unknown family reference {name:?}")))
    }
}

/// Resolves an algebra given on the command line: builtin name or file.
pub fn resolve_algebra(name: &str, verify: bool) -> Result<Carrier> {
    resolve_algebra_ref(&AlgebraRef::Name(name.to_string()), verify)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_canonical() {
        let h = Carrier::hopf(builtins::sweedler());
        let j = carrier_to_json(&h);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let parsed: AlgebraJson = serde_json::from_str(&text).unwrap();
        let back = json_to_carrier(&parsed, true).unwrap();
        assert_eq!(back, h);
        let again = serde_json::to_string_pretty(&carrier_to_json(&back)).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn corrupted_mult_is_detected_with_witness() {
        let h = builtins::group_z2();
        let mut j = carrier_to_json(&Carrier::hopf(h));
        j.mult[1][1][0] = "0".into(); // t·t = 1 broken
        let err = json_to_carrier(&j, true).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }), "{err:?}");
    }

    #[test]
    fn skip_verify_accepts_corrupted_data() {
        let h = builtins::group_z2();
        let mut j = carrier_to_json(&Carrier::hopf(h));
        j.mult[1][1][0] = "0".into();
        assert!(json_to_carrier(&j, false).is_ok());
    }

    #[test]
    fn non_multiplicative_morphism_rejected() {
        let mj = MorphismJson {
            source: AlgebraRef::Name("group:Z2".into()),
            target: AlgebraRef::Name("group:Z2".into()),
            matrix: vec![vec!["1".into(), "0".into()], vec!["1".into(), "1".into()]],
            hopf: false,
        };
        let err = json_to_morphism(&mj, true).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }), "{err:?}");
    }

    #[test]
    fn builtin_reference_resolves_in_refs() {
        let c = resolve_algebra("group:Z2", true).unwrap();
        assert_eq!(c.dim(), 2);
    }
}
