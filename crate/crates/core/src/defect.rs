//! How many independent conditions a finite set of projective points
//! imposes on forms of a given degree, and the equivariant defects of a
//! hypersurface whose only singularities are nodes.
//!
//! The tool does not check that the points really are the nodes of a
//! hypersurface of the stated degree. Supplying the right points is the
//! caller's job; wrong points give a wrong defect without any warning.
//!
//! For six cusps of a plane sextic, `defect_of_system(cusps, 2)` is 1
//! exactly when the cusps lie on a conic, which is the classical criterion
//! for `β_1 = β_5 = 1`. That criterion is not applied automatically.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefectError {
    #[error("invalid rational {0:?} (expected \"p\" or \"p/q\")")]
    InvalidRational(String),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    WrongArity {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("point {0} has all coordinates zero")]
    ZeroPoint(usize),
    #[error("points {0} and {1} are the same projective point")]
    Duplicate(usize, usize),
    #[error("degree q = dn/2 − n − 1 = {q} is negative for n = {n}, d = {d}")]
    NegativeDegree { q: i64, n: u32, d: u64 },
    #[error("points file is not a JSON list of string arrays: {0}")]
    Json(String),
}

pub fn parse_rational(s: &str) -> Result<BigRational, DefectError> {
    let bad = || DefectError::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Distinct points of `P^n`, each given by `n + 1` exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePointSet {
    n: usize,
    points: Vec<Vec<BigRational>>,
}

impl ProjectivePointSet {
    pub fn new(n: usize, points: Vec<Vec<BigRational>>) -> Result<Self, DefectError> {
        let mut seen: HashSet<Vec<BigRational>> = HashSet::new();
        let mut first_index = std::collections::HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if p.len() != n + 1 {
                return Err(DefectError::WrongArity {
                    index: i,
                    got: p.len(),
                    expected: n + 1,
                });
            }
            let Some(lead) = p.iter().find(|c| !c.is_zero()) else {
                return Err(DefectError::ZeroPoint(i));
            };
            let normal: Vec<BigRational> = p.iter().map(|c| c / lead).collect();
            if !seen.insert(normal.clone()) {
                return Err(DefectError::Duplicate(first_index[&normal], i));
            }
            first_index.insert(normal, i);
        }
        Ok(ProjectivePointSet { n, points })
    }

    /// Parses `[["1","0","1"], ["2/3","1","0"], …]`. The ambient dimension
    /// is taken from the coordinates, or from `n` when given; an empty
    /// list without `n` is placed in `P^2`.
    pub fn from_json(text: &str, n: Option<usize>) -> Result<Self, DefectError> {
        let raw: Vec<Vec<String>> =
            serde_json::from_str(text).map_err(|e| DefectError::Json(e.to_string()))?;
        let points = raw
            .iter()
            .map(|p| p.iter().map(|c| parse_rational(c)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let n = n
            .or_else(|| points.first().map(|p| p.len().saturating_sub(1)))
            .unwrap_or(2);
        Self::new(n, points)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<Vec<String>> = self
            .points
            .iter()
            .map(|p| p.iter().map(format_rational).collect())
            .collect();
        serde_json::to_string(&raw).expect("string arrays serialize")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }
}

/// Exponent vectors of all degree-`q` monomials in `vars` variables,
/// graded lexicographic (so `x_0^q` comes first).
pub fn monomials(vars: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    if vars == 0 {
        return if q == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    go(0, q, &mut vec![0; vars], &mut out);
    out
}

/// Rows of the evaluation matrix, each scaled to integers by the lcm of
/// its denominators.
fn evaluation_rows(pts: &ProjectivePointSet, q: usize) -> Vec<Vec<BigInt>> {
    let monos = monomials(pts.n + 1, q);
    pts.points
        .par_iter()
        .map(|p| {
            let row: Vec<BigRational> = monos
                .iter()
                .map(|e| {
                    p.iter()
                        .zip(e)
                        .fold(BigRational::one(), |acc, (c, &k)| acc * num_traits::pow(c.clone(), k))
                })
                .collect();
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank of an integer matrix by Bareiss elimination (all divisions exact).
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// `k − rank(E)`, `E` the `k × C(n+q, n)` matrix of degree-`q` monomials at
/// the `k` points.
pub fn defect_of_system(pts: &ProjectivePointSet, q: usize) -> BigInt {
    if pts.is_empty() {
        return BigInt::zero();
    }
    let rank = integer_rank(evaluation_rows(pts, q));
    BigInt::from(pts.len() - rank)
}

/// The degree `q = dn/2 − n − 1` used for nodal hypersurfaces (`dn` even).
pub fn nodal_degree(n: u32, d: u64) -> Result<usize, DefectError> {
    let q = (d as i64 * n as i64) / 2 - n as i64 - 1;
    if q < 0 {
        return Err(DefectError::NegativeDegree { q, n, d });
    }
    Ok(q as usize)
}

/// Equivariant defects `β_0, …, β_{d-1}` of a degree-`d` hypersurface in
/// `P^n` whose singularities are exactly the nodes `pts`:
/// all zero if `n` and `d` are odd; only `β_{d/2}` if `n` is odd and `d`
/// even; only `β_0` if `n` is even. The nonzero one is the defect of the
/// nodes on forms of degree `dn/2 − n − 1`.
pub fn nodal_beta(pts: &ProjectivePointSet, n: u32, d: u64) -> Result<Vec<BigInt>, DefectError> {
    if pts.ambient_dim() != n as usize {
        if let Some(p) = pts.points().first() {
            return Err(DefectError::WrongArity {
                index: 0,
                got: p.len(),
                expected: n as usize + 1,
            });
        }
    }
    let mut beta = vec![BigInt::zero(); d as usize];
    let slot = match (n % 2 == 1, d % 2 == 1) {
        (true, true) => return Ok(beta),
        (true, false) => (d / 2) as usize,
        (false, _) => 0,
    };
    let q = nodal_degree(n, d)?;
    let value = defect_of_system(pts, q);
    debug_assert!(!value.is_negative());
    beta[slot] = value;
    Ok(beta)
}
