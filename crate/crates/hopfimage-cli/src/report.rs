//! Machine-readable reports. Field order is fixed by struct order and all
//! content is deterministic for fixed (inputs, parameters, seed); timing is
//! opt-in so that default reports are byte-identical across runs.

use serde::Serialize;

use hopfimage::algebra::AxiomReport;
use hopfimage::faithful::IFVerdict;
use hopfimage::subspace::Subspace;

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    pub engine_version: String,
    pub inputs: Vec<String>,
    pub parameters: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_size: Option<usize>,
    pub cap_entries: usize,
    pub skip_verify: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub dim: usize,
    pub field: String,
    pub checks: Vec<CheckLine>,
    pub infos: Vec<String>,
    pub all_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

pub fn check_lines(report: &AxiomReport) -> Vec<CheckLine> {
    report
        .checks
        .iter()
        .map(|c| CheckLine {
            axiom: c.axiom.to_string(),
            passed: c.passed,
            witness: c.witness.clone(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ScanLine {
    pub length: usize,
    pub dim: usize,
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub jointly_inner_faithful: bool,
    pub witness_dim: usize,
    pub witness_basis: Vec<Vec<String>>,
    pub word_scan: Vec<ScanLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<usize>,
    pub scan_reached_witness: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn subspace_rows(s: &Subspace) -> Vec<Vec<String>> {
    (0..s.dim())
        .map(|r| s.basis().row(r).iter().map(|c| c.to_canonical_string()).collect())
        .collect()
}

pub fn verdict_body(meta: Meta, v: &IFVerdict, timing_ms: Option<u128>) -> VerdictReport {
    let warning = (!v.scan_reached_witness).then(|| {
        format!(
            "WARN: word scan did not reach the witness within the scan length (scan dim {}, witness dim {})",
            v.word_scan.last().map(|(_, d)| *d).unwrap_or_default(),
            v.witness.subspace.dim()
        )
    });
    VerdictReport {
        meta,
        jointly_inner_faithful: v.jointly_inner_faithful,
        witness_dim: v.witness.subspace.dim(),
        witness_basis: subspace_rows(&v.witness.subspace),
        word_scan: v.word_scan.iter().map(|&(length, dim)| ScanLine { length, dim }).collect(),
        stabilized_at: v.stabilized_at,
        scan_reached_witness: v.scan_reached_witness,
        warning,
        timing_ms,
    }
}

#[derive(Debug, Serialize)]
pub struct HopfImageReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub domain_dim: usize,
    pub witness_dim: usize,
    pub image_dim: usize,
    pub image_axioms_pass: bool,
    pub factorization_exact: bool,
    pub quotient_matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct TensorReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub left_jointly_if: bool,
    pub right_jointly_if: bool,
    pub tensor_jointly_if: bool,
    pub tensor_witness_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct FreeTrial {
    pub element: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub found: bool,
    pub nonzero_terms: usize,
}

#[derive(Debug, Serialize)]
pub struct FreeReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub variant: String,
    pub domain_basis_size: usize,
    pub trials: Vec<FreeTrial>,
    pub all_separated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct SeparateTrial {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub found: bool,
    pub set_size: usize,
}

#[derive(Debug, Serialize)]
pub struct SeparateReport {
    #[serde(flatten)]
    pub meta: Meta,
    pub mode: String,
    pub trials: Vec<SeparateTrial>,
    pub all_separated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn print_report<T: Serialize>(report: &T, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serialization");
    match out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
