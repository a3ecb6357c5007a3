//! Dense matrices over a cyclotomic field: explicit Jordan and cyclic
//! matrices, exact rank, and Jordan type from rank sequences.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::field::{CycloElement, CyclotomicField};
use super::OracleError;
use crate::cyclo::UnitRoot;
use crate::jordan::JordanStructure;

#[derive(Clone, Debug)]
pub struct CycloMatrix {
    field: Arc<CyclotomicField>,
    rows: usize,
    cols: usize,
    entries: Vec<CycloElement>,
}

impl PartialEq for CycloMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.level() == other.field.level()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl CycloMatrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &Arc<CyclotomicField>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CycloMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn level(&self) -> u64 {
        self.field.level()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        CycloMatrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Rows reordered so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        CycloMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(perm[i], j).clone()
        })
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        CycloMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(i, perm[j]).clone()
        })
    }

    /// The same matrix over `Q(ζ_level)`, `self.level() | level`.
    pub fn lift(&self, level: u64) -> Self {
        if level == self.level() {
            return self.clone();
        }
        let field = CyclotomicField::new(level);
        CycloMatrix {
            entries: self.entries.iter().map(|e| field.lift(e)).collect(),
            field,
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        assert_eq!(self.level(), other.level(), "matrix product over different fields");
        let f = &self.field;
        let mut out = CycloMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    /// `self − α·I`.
    pub fn shifted(&self, alpha: &CycloElement) -> CycloMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = self.field.sub(self.get(i, i), alpha);
            out.set(i, i, v);
        }
        out
    }

    /// Exact rank by Bareiss fraction-free elimination. The pivot is the
    /// first nonzero entry, scanning columns left to right; each step
    /// divides by the previous pivot exactly once (one inverse per step).
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a: Vec<Vec<CycloElement>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut prev_inv = f.one();
        let mut prev_is_one = true;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            // new a[i][j] = (pivot·a[i][j] − a[i][c]·a[r][j]) / prev
            let scale = if prev_is_one {
                pivot.clone()
            } else {
                f.mul(&pivot, &prev_inv)
            };
            let scale_is_one = scale.is_one();
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            tail.iter_mut().for_each(|row| {
                let lead = std::mem::replace(&mut row[c], f.zero());
                let g = if lead.is_zero() {
                    None
                } else if prev_is_one {
                    Some(lead)
                } else {
                    Some(f.mul(&lead, &prev_inv))
                };
                if g.is_none() && scale_is_one {
                    return;
                }
                for j in c + 1..self.cols {
                    let mut v = if scale_is_one || row[j].is_zero() {
                        std::mem::replace(&mut row[j], f.zero())
                    } else {
                        f.mul(&scale, &row[j])
                    };
                    if let Some(g) = &g {
                        v = f.sub_mul(&v, g, &pivot_row[j]);
                    }
                    row[j] = v;
                }
            });
            prev_is_one = pivot.is_one();
            prev_inv = f.inv(&pivot).expect("nonzero pivot is invertible");
            r += 1;
        }
        r
    }
}

/// One Jordan block `J_l(α)` per recorded block, eigenvalues ascending and
/// sizes descending, with ones on the superdiagonal.
pub fn build_jordan_matrix(j: &JordanStructure, level: u64) -> Result<CycloMatrix, OracleError> {
    let field = CyclotomicField::new(level);
    let dim = j
        .total_dim()
        .to_usize()
        .ok_or(OracleError::TooLarge)?;
    let mut m = CycloMatrix::zeros(&field, dim, dim);
    let mut at = 0;
    for alpha in j.spectrum() {
        let value = field.embed(alpha).ok_or(OracleError::OrderNotDividing {
            root: alpha,
            level,
        })?;
        for size in j.listed_blocks(alpha).ok_or(OracleError::TooLarge)? {
            for k in 0..size {
                m.set(at + k, at + k, value.clone());
                if k + 1 < size {
                    m.set(at + k, at + k + 1, field.one());
                }
            }
            at += size;
        }
    }
    Ok(m)
}

/// Matrix of `(x_1, …, x_m) ↦ (M x_m, x_1, …, x_{m−1})`: block row 1 holds
/// `M` in block column `m`, block row `i ≥ 2` holds `I` in block column `i−1`.
pub fn build_cyclic_matrix(m: &CycloMatrix, copies: usize) -> CycloMatrix {
    assert!(m.is_square(), "cyclic matrix of a non-square matrix");
    assert!(copies >= 1);
    let n = m.rows();
    let f = m.field().clone();
    let mut out = CycloMatrix::zeros(&f, n * copies, n * copies);
    for i in 0..n {
        for j in 0..n {
            out.set(i, (copies - 1) * n + j, m.get(i, j).clone());
        }
    }
    for b in 1..copies {
        for i in 0..n {
            out.set(b * n + i, (b - 1) * n + i, f.one());
        }
    }
    out
}

/// Rank sequence `r_k = rank((M − αI)^k)`, `k = 0, 1, …`, up to and
/// including the first repeated value.
pub fn rank_sequence(m: &CycloMatrix, alpha: &CycloElement) -> Vec<usize> {
    let b = m.shifted(alpha);
    let mut ranks = vec![m.rows()];
    let mut power = b.clone();
    loop {
        let r = power.rank();
        let last = *ranks.last().unwrap();
        ranks.push(r);
        if r == last {
            return ranks;
        }
        power = power.mul(&b);
    }
}

/// Jordan type of `M` restricted to the candidate eigenvalues, via
/// `#_l = r_{l−1} − 2 r_l + r_{l+1}`. The matrix is lifted to the level
/// needed by the candidates, bounded by `level_cap`.
pub fn jordan_type(
    m: &CycloMatrix,
    candidates: &[UnitRoot],
    level_cap: u64,
) -> Result<JordanStructure, OracleError> {
    if !m.is_square() {
        return Err(OracleError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let candidates: BTreeSet<UnitRoot> = candidates.iter().copied().collect();
    let level = candidates
        .iter()
        .fold(m.level(), |acc, a| acc.lcm(&a.den()));
    if level > level_cap {
        return Err(OracleError::LevelCap {
            needed: level,
            cap: level_cap,
        });
    }
    let m = m.lift(level);
    let field = m.field().clone();
    let per_candidate: Vec<(UnitRoot, Vec<usize>)> = candidates
        .into_par_iter()
        .map(|alpha| {
            let value = field.embed(alpha).expect("level covers every candidate");
            (alpha, rank_sequence(&m, &value))
        })
        .collect();

    let mut out = JordanStructure::new();
    for (alpha, r) in per_candidate {
        for l in 1..r.len() - 1 {
            let count = r[l - 1] as i64 - 2 * r[l] as i64 + r[l + 1] as i64;
            out.add_blocks(alpha, l, count);
        }
    }
    let found = out.total_dim().to_usize().unwrap_or(usize::MAX);
    if found != m.rows() {
        return Err(OracleError::SpectrumNotCovered {
            found,
            dim: m.rows(),
        });
    }
    Ok(out)
}
