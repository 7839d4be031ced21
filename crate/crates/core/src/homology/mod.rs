//! Hochschild, cyclic, negative cyclic and periodic cyclic homology of `R//p`
//! over `R`, both from the explicit presentation matrices (the oracle) and
//! from the closed forms, plus the colimit data used to verify them.

mod checks;
mod colimit;
mod compute;
pub mod indexing;
mod presentation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{ModuleShape, SnfResult};

pub use checks::{
    a_minimality_probe, connes_length_check, hc_neg_truncation_probe, hp_stabilization_check, AMinimalityReport,
    ConnesReport, StabilizationReport, TruncationProbeReport,
};
pub use colimit::{
    kernel_generator_defaults, phi_coeffs, verify_kernel_generators, verify_ni_equivalence, CoeffVector,
    KernelGeneratorParams, NiReport,
};
pub use compute::{
    hc_closed_form, hc_neg_closed_form, hc_oracle, hochschild, hochschild_oracle, hp, hp_oracle_truncation,
};
pub use presentation::{
    cyclic_matrix, hochschild_differential, hochschild_rank, negative_matrix, periodic_matrix, StaircasePresentation,
    Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    #[serde(rename = "HH")]
    Hochschild,
    #[serde(rename = "HC")]
    Cyclic,
    #[serde(rename = "HCneg")]
    NegativeCyclic,
    #[serde(rename = "HP")]
    Periodic,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Hochschild => "HH",
            Theory::Cyclic => "HC",
            Theory::NegativeCyclic => "HCneg",
            Theory::Periodic => "HP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Smith normal form of a finite presentation.
    Oracle,
    ClosedForm,
    /// Read off from the stable part of a family of finite truncations.
    Stabilized,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed_form",
            Method::Stabilized => "stabilized",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub theory: Theory,
    /// Homological degree.
    pub degree: i64,
    pub shape: ModuleShape,
    pub method: Method,
    pub certificate: Option<SnfResult>,
}

impl HomologyResult {
    pub(crate) fn new(theory: Theory, degree: i64, shape: ModuleShape, method: Method) -> Self {
        HomologyResult { theory, degree, shape, method, certificate: None }
    }
}

/// A closed-form query either lands in the range where a formula is known or
/// is reported as not covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coverage {
    Covered(HomologyResult),
    NotCovered { theory: Theory, degree: i64, reason: String },
}

impl Coverage {
    pub fn result(&self) -> Option<&HomologyResult> {
        match self {
            Coverage::Covered(r) => Some(r),
            Coverage::NotCovered { .. } => None,
        }
    }

    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered(_))
    }
}
