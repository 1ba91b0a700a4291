//! Exact-arithmetic engine for finite-dimensional Hopf algebras.
//!
//! Structures are given by structure constants over ℚ or 𝔽_p and verified
//! against the full axiom battery rather than trusted. On top of that sit
//! the word-map machinery for families of algebra morphisms, the
//! largest-Hopf-ideal fixed point deciding joint inner faithfulness, Hopf
//! image quotients, and truncated free products with the σ(·)σ embedding
//! used for free-product permanence checks.
//!
//! The `parallel` feature (default) runs the word-kernel scans and axiom
//! sweeps on a rayon pool; results are merged in deterministic order, so
//! the feature never changes any output.

pub mod algebra;
pub mod builtins;
pub mod error;
mod exec;
pub mod faithful;
pub mod field;
pub mod free;
pub mod json;
pub mod matrix;
pub mod sample;
pub mod subspace;
pub mod word;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
