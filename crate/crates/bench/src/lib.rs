//! Fixtures shared by the benchmarks.

use dunkl_core::suite::build_checks;
use dunkl_core::{CheckGroup, DihedralConfig, IdentityCheck, Signature, SymmetryOperators};

pub fn config(m: u32, eps: i64) -> DihedralConfig {
    DihedralConfig::new(m, Signature::from_sign(eps).expect("eps is +1 or -1")).expect("m >= 3")
}

/// Checks of one group, built for symbolic kappa.
pub fn checks(cfg: &DihedralConfig, group: CheckGroup, degree: u32) -> Vec<IdentityCheck> {
    let ops = SymmetryOperators::new(cfg).expect("operators build");
    build_checks(&ops, &[group], degree)
}
