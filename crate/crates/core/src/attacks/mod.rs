//! Attack experiments against the Sidon cryptosystem, verified against the
//! private key.

mod bilinear;
mod kernel;
mod minors;
mod structured;

use std::collections::BTreeMap;

use serde::Serialize;

pub use bilinear::{bilinear_bruteforce, BILINEAR_LIMIT};
pub use kernel::{
    base_field_kernel_probe, base_field_product, build_ks_system, in_kernel,
    kernel_attack_experiment, ks_guess_experiment, KernelExperiment, KsEquation, KsSystem,
};
pub use minors::{
    basis_extension_kernel_equality, build_gamma_lin, build_omega_lin, build_omega_q,
    linearize_minors, minor_kernel_report, minor_row_bound, structure_constants, tower_basis,
    ExtendedBasisData, LinearizedSystem, MinorReport, OmegaQ, SystemSource,
};
pub use structured::{
    quadratic_assignment, structured_attack_emit, structured_attack_verify,
    structured_ground_truth, PolySystem, StructuredSystem, Term,
};

/// Status of one named check in an [`AttackReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
}

impl From<bool> for Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

/// JSON report of an attack run: `{rank, kernel_dim, bounds, checks, details}`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AttackReport {
    pub rank: Option<usize>,
    pub kernel_dim: Option<usize>,
    pub bounds: BTreeMap<String, serde_json::Value>,
    pub checks: BTreeMap<String, Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl AttackReport {
    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok.into());
    }

    pub fn bound(&mut self, name: &str, value: impl Into<serde_json::Value>) {
        self.bounds.insert(name.to_string(), value.into());
    }

    pub fn detail(&mut self, name: &str, value: impl Into<serde_json::Value>) {
        self.details.insert(name.to_string(), value.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| *c == Check::Pass)
    }
}
