//! The cyclic block operator `c_m(φ)(x_1, …, x_m) = (φ(x_m), x_1, …, x_{m−1})`
//! on Jordan structures.
//!
//! The generalized `α`-eigenspace of `c_m(φ)` carries the same nilpotent
//! part as the `α^m`-eigenspace of `φ`. So every eigenvalue `ξ` of `φ`
//! with block multiset `B` contributes `B` at each of the `m` solutions of
//! `α^m = ξ`, and nothing else appears.

use crate::jordan::JordanStructure;

pub fn cyclic_power(t: &JordanStructure, m: u64) -> JordanStructure {
    assert!(m >= 1, "cyclic_power needs m >= 1");
    let mut out = JordanStructure::new();
    for (xi, size, count) in t.iter() {
        for alpha in xi.mth_roots(m) {
            out.add_blocks(alpha, size, count.clone());
        }
    }
    out
}
