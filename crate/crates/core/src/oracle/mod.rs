//! Brute-force verifier for the cyclic operator identification.
//!
//! Everything here goes through explicit matrices over `Q(ζ_N)`: the
//! Jordan structure is written out as a block-diagonal matrix, the cyclic
//! block operator is built from it entry by entry, and its Jordan type is
//! read off exact rank sequences. No part of this path calls into
//! [`crate::cyclic`].

mod field;
mod matrix;

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::UnitRoot;
use crate::jordan::JordanStructure;

pub use field::{cyclotomic_polynomial, euler_phi, CycloElement, CyclotomicField};
pub use matrix::{
    build_cyclic_matrix, build_jordan_matrix, jordan_type, rank_sequence, CycloMatrix,
};

/// Default bound on the cyclotomic field level.
pub const DEFAULT_LEVEL_CAP: u64 = 360;

/// Largest structure dimension the self-test accepts.
pub const MAX_SELFTEST_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("field level {needed} exceeds the cap {cap}")]
    LevelCap { needed: u64, cap: u64 },
    #[error("eigenvalue {root} does not live in Q(ζ_{level})")]
    OrderNotDividing { root: UnitRoot, level: u64 },
    #[error("spectrum not covered: candidates account for {found} of {dim} dimensions")]
    SpectrumNotCovered { found: usize, dim: usize },
    #[error("matrix is {rows}×{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("structure too large for an explicit matrix")]
    TooLarge,
    #[error("self-test dimension {got} exceeds the cap {cap}")]
    DimensionCap { got: usize, cap: usize },
}

/// One disagreement between the combinatorial and the matrix route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: JordanStructure,
    pub m: u64,
    pub combinatorial: JordanStructure,
    pub matrix: JordanStructure,
}

/// Jordan type of `c_m(T)` computed from explicit matrices.
pub fn matrix_cyclic_power(
    t: &JordanStructure,
    m: u64,
    level_cap: u64,
) -> Result<JordanStructure, OracleError> {
    let base = t.spectrum().fold(1u64, |acc, a| acc.lcm(&a.den()));
    let level = base * m;
    if level > level_cap {
        return Err(OracleError::LevelCap {
            needed: level,
            cap: level_cap,
        });
    }
    let jm = build_jordan_matrix(t, base)?;
    let cm = build_cyclic_matrix(&jm, m as usize);
    let candidates: BTreeSet<UnitRoot> = t.spectrum().flat_map(|xi| xi.mth_roots(m)).collect();
    let candidates: Vec<UnitRoot> = candidates.into_iter().collect();
    jordan_type(&cm, &candidates, level_cap)
}

/// Compares `combinatorial(T, m)` with the matrix route.
pub fn cross_check(
    t: &JordanStructure,
    m: u64,
    level_cap: u64,
    combinatorial: impl Fn(&JordanStructure, u64) -> JordanStructure,
) -> Result<Option<Counterexample>, OracleError> {
    let expected = combinatorial(t, m);
    let got = matrix_cyclic_power(t, m, level_cap)?;
    Ok((expected != got).then(|| Counterexample {
        input: t.clone(),
        m,
        combinatorial: expected,
        matrix: got,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checked: usize,
    pub failures: Vec<Counterexample>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`cross_check`] over every case, in parallel; the failure list
/// keeps the input order.
pub fn run_selftest<F>(
    cases: &[(JordanStructure, u64)],
    level_cap: u64,
    combinatorial: F,
) -> Result<SelftestReport, OracleError>
where
    F: Fn(&JordanStructure, u64) -> JordanStructure + Sync,
{
    let results: Vec<Option<Counterexample>> = cases
        .par_iter()
        .map(|(t, m)| cross_check(t, *m, level_cap, &combinatorial))
        .collect::<Result<_, _>>()?;
    Ok(SelftestReport {
        checked: cases.len(),
        failures: results.into_iter().flatten().collect(),
    })
}

/// Integer partitions of `n`, parts descending.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Roots of unity whose order divides `q`, ascending.
pub fn roots_dividing(q: u64) -> Vec<UnitRoot> {
    (0..q).map(|p| UnitRoot::new(p as i128, q)).collect()
}

/// Every nonempty Jordan structure of total dimension at most `max_dim`
/// with eigenvalue orders dividing `order`.
pub fn all_structures(max_dim: usize, order: u64) -> Vec<JordanStructure> {
    let roots = roots_dividing(order);
    let parts: Vec<Vec<Vec<usize>>> = (0..=max_dim).map(partitions).collect();
    let mut out = Vec::new();
    fn go(
        idx: usize,
        left: usize,
        roots: &[UnitRoot],
        parts: &[Vec<Vec<usize>>],
        cur: &JordanStructure,
        out: &mut Vec<JordanStructure>,
    ) {
        if idx == roots.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            for p in &parts[k] {
                let next = cur.clone().with_blocks(roots[idx], p);
                go(idx + 1, left - k, roots, parts, &next, out);
            }
        }
    }
    go(0, max_dim, &roots, &parts, &JordanStructure::new(), &mut out);
    out
}

/// Seeded random structures of dimension `1..=max_dim`, eigenvalue orders
/// dividing `order`, each paired with `m` in `1..=max_m`.
pub fn random_cases(
    count: usize,
    max_dim: usize,
    order: u64,
    max_m: u64,
    seed: u64,
) -> Vec<(JordanStructure, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots = roots_dividing(order);
    (0..count)
        .map(|_| {
            let mut left = rng.gen_range(1..=max_dim);
            let mut j = JordanStructure::new();
            while left > 0 {
                let size = rng.gen_range(1..=left);
                let alpha = roots[rng.gen_range(0..roots.len())];
                j.add_blocks(alpha, size, 1);
                left -= size;
            }
            (j, rng.gen_range(1..=max_m))
        })
        .collect()
}
