//! Formulas, proof nets, persistent paths and the shallowness check.

mod church;
mod formula;
mod paths;
mod proofnet;
mod validate;

pub use church::{church, church_cut_against_zero, letter};
pub use formula::Formula;
pub use paths::{box_interior, linear_part, persistent_paths, AtomOcc};
pub use proofnet::{BoxDef, Link, LinkKind, ProofNet, RawNet};
pub use validate::{validate_shallow, Rule, ValidationReport, Violation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("formula syntax: {0}")]
    FormulaSyntax(String),
    #[error("malformed net: {0}")]
    Malformed(String),
    #[error("net JSON: {0}")]
    Json(String),
    #[error("net is not linear: {0}")]
    NonLinearNet(String),
}
