//! Jordan structure of the monodromy at infinity from the local data of the
//! hypersurface at infinity, with the derived consistency checks.
//!
//! Inputs are the dimension `n` (polynomials in `n + 1` variables), the
//! degree `d`, the isolated singularities of `X^∞ = {f_d = 0} ⊂ P^n`, and
//! the equivariant defects `β_0, …, β_{d-1}`. The defects are global
//! invariants: they can be given, derived from node positions, or
//! enumerated over every value compatible with the local data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclic::cyclic_power;
use crate::cyclo::{bigint_json, RootExponentVector, UnitRoot};
use crate::defect::{nodal_beta, DefectError, ProjectivePointSet};
use crate::jordan::JordanStructure;
use crate::localsing::{local_monodromy, milnor_number, SingularityError, SingularityModel};

/// Default bound on the number of enumerated defect vectors.
pub const DEFAULT_ENUMERATE_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfinityError {
    #[error("n must be ≥ 2 (got {0})")]
    DimensionTooSmall(u32),
    #[error("d must be ≥ 2 (got {0})")]
    DegreeTooSmall(u64),
    #[error("singularity {index}: {source}")]
    Singularity {
        index: usize,
        #[source]
        source: SingularityError,
    },
    #[error("total Milnor number {sum} exceeds (d−1)^(n+1) = {bound}")]
    MilnorSumTooLarge { sum: BigInt, bound: BigInt },
    #[error("beta has {got} entries, expected d = {d}")]
    BetaLength { got: usize, d: u64 },
    #[error("beta_{s} = {value} is negative")]
    BetaNegative { s: usize, value: BigInt },
    #[error("beta symmetry violated: beta_{s} = {left} but beta_{mirror} = {right}")]
    BetaSymmetry {
        s: usize,
        mirror: usize,
        left: BigInt,
        right: BigInt,
    },
    #[error("from_nodes needs every singularity to be a node, but singularity {0} is not")]
    FromNodesNonNode(usize),
    #[error("from_nodes got {points} points for {nodes} nodes")]
    NodeCountMismatch { points: usize, nodes: usize },
    #[error(transparent)]
    Defect(#[from] DefectError),
    #[error(
        "negative block count: beta_{s} = {beta} is below the lower bound {bound} \
         (#_1 at e^(2πi·{s}/{d}) would be {count})"
    )]
    BelowLowerBound {
        s: usize,
        d: u64,
        beta: BigInt,
        bound: BigInt,
        count: BigInt,
    },
    #[error(
        "negative block count: beta_{s} = {beta} is above the upper bound {bound} \
         (#_2 at e^(2πi·{s}/{d}) would be {count})"
    )]
    AboveUpperBound {
        s: usize,
        d: u64,
        beta: BigInt,
        bound: BigInt,
        count: BigInt,
    },
    #[error("no admissible beta_{s}: lower bound {lower} exceeds upper bound {upper}")]
    NoAdmissibleBeta {
        s: usize,
        lower: BigInt,
        upper: BigInt,
    },
    #[error("characteristic polynomial formula is not a polynomial (exponent {exponent} at {root})")]
    NonPolynomial { root: UnitRoot, exponent: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Given(Vec<BigInt>),
    FromNodes(ProjectivePointSet),
    Enumerate,
}

impl BetaSpec {
    pub fn mode(&self) -> &'static str {
        match self {
            BetaSpec::Given(_) => "given",
            BetaSpec::FromNodes(_) => "from_nodes",
            BetaSpec::Enumerate => "enumerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub n: u32,
    pub d: u64,
    pub singularities: Vec<SingularityModel>,
    pub beta: BetaSpec,
}

/// Local monodromies of all singularities, validated against `(n, d)`.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub n: u32,
    pub d: u64,
    pub monodromies: Vec<JordanStructure>,
    /// Direct sum of every local monodromy.
    pub total: JordanStructure,
    pub milnor: Vec<BigInt>,
    pub symmetric: bool,
}

impl LocalData {
    pub fn new(n: u32, d: u64, singularities: &[SingularityModel]) -> Result<Self, InfinityError> {
        if n < 2 {
            return Err(InfinityError::DimensionTooSmall(n));
        }
        if d < 2 {
            return Err(InfinityError::DegreeTooSmall(d));
        }
        let monodromies = singularities
            .iter()
            .enumerate()
            .map(|(index, s)| {
                local_monodromy(s, n).map_err(|source| InfinityError::Singularity { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let milnor: Vec<BigInt> = singularities.iter().map(milnor_number).collect();
        let sum: BigInt = milnor.iter().sum();
        let bound = top_dimension(n, d);
        if sum > bound {
            return Err(InfinityError::MilnorSumTooLarge { sum, bound });
        }
        let total = monodromies
            .iter()
            .fold(JordanStructure::new(), |acc, t| acc.direct_sum(t));
        let symmetric = monodromies.iter().all(JordanStructure::is_conjugation_symmetric);
        Ok(LocalData {
            n,
            d,
            monodromies,
            total,
            milnor,
            symmetric,
        })
    }

    pub fn from_spec(spec: &ProblemSpec) -> Result<Self, InfinityError> {
        Self::new(spec.n, spec.d, &spec.singularities)
    }

    pub fn milnor_sum(&self) -> BigInt {
        self.milnor.iter().sum()
    }

    pub fn chi(&self) -> Vec<BigInt> {
        chi_vector(self.n, self.d, &self.milnor)
    }

    /// Interval `[lower, upper]` for `β_s`, with `lower = max(0, ⌈(Σ#(T_i)_α − χ_s)/2⌉)`
    /// and `upper = Σ#_1(T_i)_α` at `α = e^{2πis/d}`.
    pub fn bounds(&self, chi: &[BigInt], s: usize) -> (BigInt, BigInt) {
        let alpha = UnitRoot::from_index(s as u64, self.d);
        let raw = self.total.sharp_total(alpha) - &chi[s];
        let lower = ceil_half(&raw).max(BigInt::zero());
        let upper = self.total.sharp(alpha, 1);
        (lower, upper)
    }
}

fn ceil_half(x: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(&BigInt::from(2));
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

fn sign(n: u32) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(d − 1)^{n+1}`, the Milnor number of `f_d + (generic lower terms)`
/// once the singularities at infinity are removed.
pub fn top_dimension(n: u32, d: u64) -> BigInt {
    num_traits::pow(BigInt::from(d - 1), n as usize + 1)
}

/// `((−1)^n + (d−1)^{n+1}) / d`; the division is always exact.
fn euler_quotient(n: u32, d: u64) -> BigInt {
    let num = sign(n) + top_dimension(n, d);
    let (q, r) = num.div_rem(&BigInt::from(d));
    assert!(r.is_zero(), "(−1)^n + (d−1)^(n+1) not divisible by d");
    q
}

/// Dimension of the cohomology carrying the monodromy at infinity.
pub fn expected_dimension(n: u32, d: u64, milnor_sum: &BigInt) -> BigInt {
    top_dimension(n, d) - milnor_sum
}

/// `χ_0 = −Σμ_i + ((−1)^n + (d−1)^{n+1})/d + (−1)^{n+1}` and
/// `χ_s = χ_0 + (−1)^n` for `s = 1, …, d−1`.
pub fn chi_vector(n: u32, d: u64, milnor: &[BigInt]) -> Vec<BigInt> {
    let mu: BigInt = milnor.iter().sum();
    let chi0 = -mu + euler_quotient(n, d) - sign(n);
    let chis = &chi0 + sign(n);
    let mut out = vec![chis; d as usize];
    out[0] = chi0;
    out
}

/// Lower and upper bounds on `β_s`.
pub fn corollary3_bounds(spec: &ProblemSpec, s: usize) -> Result<(BigInt, BigInt), InfinityError> {
    let local = LocalData::from_spec(spec)?;
    Ok(local.bounds(&local.chi(), s))
}

/// For each `s`, the admissible interval for `β_s` after intersecting the
/// bounds at `s` and `d − s`. Errors when some interval is empty.
pub fn beta_ranges(local: &LocalData) -> Result<Vec<(BigInt, BigInt)>, InfinityError> {
    let d = local.d as usize;
    let chi = local.chi();
    let raw: Vec<(BigInt, BigInt)> = (0..d).map(|s| local.bounds(&chi, s)).collect();
    let mut out = Vec::with_capacity(d);
    for s in 0..d {
        let mirror = (d - s) % d;
        let lower = raw[s].0.clone().max(raw[mirror].0.clone());
        let upper = raw[s].1.clone().min(raw[mirror].1.clone());
        if lower > upper {
            return Err(InfinityError::NoAdmissibleBeta { s, lower, upper });
        }
        out.push((lower, upper));
    }
    Ok(out)
}

fn check_beta_vector(beta: &[BigInt], d: u64) -> Result<(), InfinityError> {
    if beta.len() != d as usize {
        return Err(InfinityError::BetaLength {
            got: beta.len(),
            d,
        });
    }
    if let Some((s, v)) = beta.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(InfinityError::BetaNegative { s, value: v.clone() });
    }
    for s in 1..beta.len() {
        let mirror = beta.len() - s;
        if beta[s] != beta[mirror] {
            return Err(InfinityError::BetaSymmetry {
                s,
                mirror,
                left: beta[s].clone(),
                right: beta[mirror].clone(),
            });
        }
    }
    Ok(())
}

/// Jordan structure of `T^∞_f` for one concrete defect vector.
///
/// At `α = e^{2πis/d}`:
/// `#_1 = χ_s + 2β_s − Σ#(T_i)_α`, `#_2 = −β_s + Σ#_1(T_i)_α`,
/// `#_{l+1} = Σ#_l(T_i)_α` for `l ≥ 2`.
/// At `α` with `α^d ≠ 1` the blocks are those of `⊕T_i` at `α^{1−d}`:
/// these are read off `c_{d−1}(⊕T_i)`, whose blocks at `γ` are those of
/// `⊕T_i` at `γ^{d−1}`, placed at `γ^{−1}`.
pub fn assemble_jordan(
    local: &LocalData,
    chi: &[BigInt],
    beta: &[BigInt],
) -> Result<JordanStructure, InfinityError> {
    let d = local.d;
    check_beta_vector(beta, d)?;
    let mut out = JordanStructure::new();
    for s in 0..d as usize {
        let alpha = UnitRoot::from_index(s as u64, d);
        let (lower, upper) = local.bounds(chi, s);
        let ones = &chi[s] + BigInt::from(2) * &beta[s] - local.total.sharp_total(alpha);
        if ones.is_negative() {
            return Err(InfinityError::BelowLowerBound {
                s,
                d,
                beta: beta[s].clone(),
                bound: lower,
                count: ones,
            });
        }
        let twos = local.total.sharp(alpha, 1) - &beta[s];
        if twos.is_negative() {
            return Err(InfinityError::AboveUpperBound {
                s,
                d,
                beta: beta[s].clone(),
                bound: upper,
                count: twos,
            });
        }
        out.add_blocks(alpha, 1, ones);
        out.add_blocks(alpha, 2, twos);
        for (l, c) in local.total.blocks_at(alpha) {
            if l >= 2 {
                out.add_blocks(alpha, l + 1, c.clone());
            }
        }
    }
    let lifted = cyclic_power(&local.total, d - 1);
    for (gamma, size, count) in lifted.iter() {
        let alpha = gamma.conjugate();
        if !alpha.is_root_of(d) {
            out.add_blocks(alpha, size, count.clone());
        }
    }
    Ok(out)
}

/// The concrete defect vectors a spec asks for, and whether the
/// enumeration was cut off at the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaResolution {
    pub vectors: Vec<Vec<BigInt>>,
    pub truncated: bool,
}

pub fn resolve_beta(
    spec: &ProblemSpec,
    local: &LocalData,
    cap: usize,
) -> Result<BetaResolution, InfinityError> {
    match &spec.beta {
        BetaSpec::Given(values) => {
            check_beta_vector(values, spec.d)?;
            Ok(BetaResolution {
                vectors: vec![values.clone()],
                truncated: false,
            })
        }
        BetaSpec::FromNodes(points) => {
            if let Some(i) = spec.singularities.iter().position(|s| !s.is_node()) {
                return Err(InfinityError::FromNodesNonNode(i));
            }
            if points.len() != spec.singularities.len() {
                return Err(InfinityError::NodeCountMismatch {
                    points: points.len(),
                    nodes: spec.singularities.len(),
                });
            }
            Ok(BetaResolution {
                vectors: vec![nodal_beta(points, spec.n, spec.d)?],
                truncated: false,
            })
        }
        BetaSpec::Enumerate => enumerate_betas(local, cap),
    }
}

/// Every symmetric defect vector inside the admissible ranges, in
/// lexicographic order, at most `cap` of them.
pub fn enumerate_betas(local: &LocalData, cap: usize) -> Result<BetaResolution, InfinityError> {
    let d = local.d as usize;
    let ranges = beta_ranges(local)?;
    // free coordinates are s = 0..=d/2; the rest mirror them
    let free = d / 2 + 1;
    let mut cur: Vec<BigInt> = ranges[..free].iter().map(|r| r.0.clone()).collect();
    let mut vectors = Vec::new();
    let mut truncated = false;
    loop {
        if vectors.len() == cap {
            truncated = true;
            break;
        }
        let full: Vec<BigInt> = (0..d).map(|s| cur[s.min(d - s)].clone()).collect();
        vectors.push(full);
        // odometer, last free coordinate fastest
        let mut i = free;
        loop {
            if i == 0 {
                return Ok(BetaResolution { vectors, truncated });
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0.clone();
        }
    }
    Ok(BetaResolution { vectors, truncated })
}

/// Characteristic polynomial from the local formula
/// `(λ−1)^{(−1)^{n+1}} (λ^d−1)^{((d−1)^{n+1}+(−1)^n)/d} ∏ det(λ^{d−1}·Id − T_i)/(λ^d−1)^{μ_i}`.
pub fn charpoly_corollary2(spec: &ProblemSpec) -> Result<RootExponentVector, InfinityError> {
    let local = LocalData::from_spec(spec)?;
    charpoly_from_local(&local)
}

pub fn charpoly_from_local(local: &LocalData) -> Result<RootExponentVector, InfinityError> {
    let (n, d) = (local.n, local.d);
    let mut p = RootExponentVector::linear(UnitRoot::ONE, -sign(n));
    p = p.rev_mul(&RootExponentVector::power_minus_one(d, euler_quotient(n, d)));
    for (t, mu) in local.monodromies.iter().zip(&local.milnor) {
        for xi in t.spectrum() {
            let m = t.multiplicity(xi);
            for alpha in xi.mth_roots(d - 1) {
                p.add_exponent(alpha, m.clone());
            }
        }
        p = p.rev_mul(&RootExponentVector::power_minus_one(d, -mu));
    }
    if let Some((root, e)) = p.iter().find(|(_, e)| e.is_negative()) {
        return Err(InfinityError::NonPolynomial {
            root,
            exponent: e.clone(),
        });
    }
    Ok(p)
}

/// The two sides of the zeta-function identity for `f_d`:
/// `(λ−1)^{(−1)^{n+1}} (λ^d−1)^{((d−1)^{n+1}+(−1)^n)/d − Σμ_i}` and
/// `∏_s (λ − e^{2πis/d})^{χ_s}`.
pub fn zeta_forms(n: u32, d: u64, milnor: &[BigInt]) -> (RootExponentVector, RootExponentVector) {
    let mu: BigInt = milnor.iter().sum();
    let product = RootExponentVector::linear(UnitRoot::ONE, -sign(n))
        .rev_mul(&RootExponentVector::power_minus_one(d, euler_quotient(n, d) - mu));
    let chi = chi_vector(n, d, milnor);
    let by_chi = chi
        .into_iter()
        .enumerate()
        .map(|(s, c)| (UnitRoot::from_index(s as u64, d), c))
        .collect();
    (product, by_chi)
}

/// Zeta function of `f_d` as an exponent vector; both forms must agree.
pub fn zeta_fd(spec: &ProblemSpec) -> Result<RootExponentVector, InfinityError> {
    let local = LocalData::from_spec(spec)?;
    let (product, by_chi) = zeta_forms(local.n, local.d, &local.milnor);
    assert_eq!(product, by_chi, "zeta function forms disagree");
    Ok(product)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self::new(name, status, detail)
    }
}

/// No blocks of size `≥ n+2`; blocks of size `n+1` only at `α ≠ 1` with
/// `α^d = 1`.
pub fn corollary1_check(jordan: &JordanStructure, n: u32, d: u64) -> Check {
    let limit = n as usize + 1;
    for (alpha, size, _) in jordan.iter() {
        if size > limit {
            return Check::from_bool(
                "block_sizes",
                false,
                format!("block of size {size} at {alpha} exceeds n+1 = {limit}"),
            );
        }
        if size == limit && (alpha.is_one() || !alpha.is_root_of(d)) {
            return Check::from_bool(
                "block_sizes",
                false,
                format!("block of size n+1 = {limit} at {alpha}"),
            );
        }
    }
    Check::from_bool(
        "block_sizes",
        true,
        format!("largest block {} ≤ n+1 = {limit}", jordan.max_block_size()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assembly {
    #[serde(with = "bigint_json::vec")]
    pub beta: Vec<BigInt>,
    pub jordan: JordanStructure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub n: u32,
    pub d: u64,
    pub beta_mode: &'static str,
    pub milnor_sum: BigInt,
    pub dimension: BigInt,
    pub chi: Vec<BigInt>,
    pub bounds: Vec<(BigInt, BigInt)>,
    pub assemblies: Vec<Assembly>,
    pub truncated: bool,
    pub charpoly: RootExponentVector,
    pub zeta: RootExponentVector,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AssembleOptions {
    pub enumerate_cap: usize,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions {
            enumerate_cap: DEFAULT_ENUMERATE_CAP,
        }
    }
}

/// Resolves the defects, assembles one structure per defect vector and
/// runs every consistency check over the results.
pub fn assemble(spec: &ProblemSpec, options: AssembleOptions) -> Result<Report, InfinityError> {
    let local = LocalData::from_spec(spec)?;
    let (n, d) = (spec.n, spec.d);
    let chi = local.chi();
    let resolution = resolve_beta(spec, &local, options.enumerate_cap)?;
    let assemblies: Vec<Assembly> = resolution
        .vectors
        .par_iter()
        .map(|beta| {
            assemble_jordan(&local, &chi, beta).map(|jordan| Assembly {
                beta: beta.clone(),
                jordan,
            })
        })
        .collect::<Result<_, _>>()?;

    let milnor_sum = local.milnor_sum();
    let dimension = expected_dimension(n, d, &milnor_sum);
    let bounds: Vec<_> = (0..d as usize).map(|s| local.bounds(&chi, s)).collect();
    let mut warnings = Vec::new();
    let mut checks = Vec::new();

    for (i, t) in local.monodromies.iter().enumerate() {
        if !t.is_conjugation_symmetric() {
            warnings.push(format!(
                "singularity {i}: local spectrum is not closed under complex conjugation, \
                 so it cannot come from an integral monodromy"
            ));
        }
    }
    if resolution.truncated {
        warnings.push(format!(
            "enumeration stopped after {} beta vectors",
            options.enumerate_cap
        ));
    }

    let bad_dim: Vec<_> = assemblies
        .iter()
        .filter(|a| a.jordan.total_dim() != dimension)
        .collect();
    checks.push(Check::from_bool(
        "degree_identity",
        bad_dim.is_empty(),
        format!("total dimension (d−1)^(n+1) − Σμ = {dimension}"),
    ));

    let cor1: Vec<Check> = assemblies
        .iter()
        .map(|a| corollary1_check(&a.jordan, n, d))
        .collect();
    checks.push(match cor1.iter().find(|c| c.status == CheckStatus::Fail) {
        Some(c) => c.clone(),
        None => Check::from_bool(
            "block_sizes",
            true,
            format!("no block larger than n+1 = {} in {} structure(s)", n + 1, assemblies.len()),
        ),
    });

    let charpoly = assemblies
        .first()
        .map(|a| a.jordan.char_poly())
        .unwrap_or_default();
    if local.symmetric {
        let check = match charpoly_from_local(&local) {
            Ok(expected) => {
                let ok = assemblies.iter().all(|a| a.jordan.char_poly() == expected);
                Check::from_bool(
                    "local_charpoly",
                    ok,
                    if ok {
                        "char poly matches the local formula".to_string()
                    } else {
                        "char poly differs from the local formula".to_string()
                    },
                )
            }
            Err(e) => Check::from_bool("local_charpoly", false, e.to_string()),
        };
        checks.push(check);
    } else {
        checks.push(Check::new(
            "local_charpoly",
            CheckStatus::NotApplicable,
            "local spectra are not conjugation-symmetric",
        ));
    }

    let (product, by_chi) = zeta_forms(n, d, &local.milnor);
    let chi_sum: BigInt = chi.iter().sum();
    checks.push(Check::from_bool(
        "zeta_identity",
        product == by_chi && product.degree() == chi_sum,
        format!("degree Σχ_s = {chi_sum}"),
    ));

    let in_bounds = assemblies
        .iter()
        .all(|a| (0..d as usize).all(|s| bounds[s].0 <= a.beta[s] && a.beta[s] <= bounds[s].1));
    checks.push(Check::from_bool(
        "beta_bounds",
        in_bounds,
        "every beta_s lies within its bounds",
    ));

    let same = assemblies.iter().all(|a| a.jordan.char_poly() == charpoly);
    checks.push(Check::from_bool(
        "beta_independence",
        same,
        format!("{} beta vector(s) share one characteristic polynomial", assemblies.len()),
    ));

    Ok(Report {
        n,
        d,
        beta_mode: spec.beta.mode(),
        milnor_sum,
        dimension,
        chi,
        bounds,
        assemblies,
        truncated: resolution.truncated,
        charpoly,
        zeta: product,
        checks,
        warnings,
    })
}

impl Report {
    /// Total dimension of every assembled structure, as machine integers
    /// when they fit.
    pub fn dimensions(&self) -> Vec<Option<u64>> {
        self.assemblies
            .iter()
            .map(|a| a.jordan.total_dim().to_u64())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> UnitRoot {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sextic(beta: &[i64]) -> ProblemSpec {
        ProblemSpec {
            n: 2,
            d: 6,
            singularities: vec![SingularityModel::brieskorn(&[2, 3]); 6],
            beta: BetaSpec::Given(ints(beta)),
        }
    }

    fn smooth(n: u32, d: u64) -> ProblemSpec {
        ProblemSpec {
            n,
            d,
            singularities: vec![],
            beta: BetaSpec::Given(vec![BigInt::zero(); d as usize]),
        }
    }

    fn count(j: &JordanStructure, a: UnitRoot, l: usize) -> i64 {
        j.sharp(a, l).try_into().unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_vector(2, 6, &ints(&[2; 6])), ints(&[8, 9, 9, 9, 9, 9]));
        assert_eq!(chi_vector(2, 2, &[]), ints(&[0, 1]));
        assert_eq!(chi_vector(2, 6, &[]), ints(&[20, 21, 21, 21, 21, 21]));
    }

    #[test]
    fn bounds_examples() {
        let s = sextic(&[0; 6]);
        assert_eq!(corollary3_bounds(&s, 1).unwrap(), (0.into(), 6.into()));
        assert_eq!(corollary3_bounds(&s, 2).unwrap(), (0.into(), 0.into()));
        let lines = ProblemSpec {
            n: 2,
            d: 4,
            singularities: vec![SingularityModel::OrdinaryNode; 6],
            beta: BetaSpec::Enumerate,
        };
        assert_eq!(corollary3_bounds(&lines, 0).unwrap(), (3.into(), 6.into()));
    }

    #[test]
    fn sextic_on_a_conic() {
        let report = assemble(&sextic(&[0, 1, 0, 0, 0, 1]), AssembleOptions::default()).unwrap();
        let j = &report.assemblies[0].jordan;
        for s in [1, 5] {
            let a = UnitRoot::from_index(s, 6);
            assert_eq!(count(j, a, 1), 5);
            assert_eq!(count(j, a, 2), 5);
        }
        assert_eq!(count(j, UnitRoot::ONE, 1), 8);
        for s in [2, 3, 4] {
            assert_eq!(count(j, UnitRoot::from_index(s, 6), 1), 9);
        }
        let off: Vec<UnitRoot> = j.spectrum().filter(|a| !a.is_root_of(6)).collect();
        let angles = ["1/30", "7/30", "11/30", "13/30", "17/30", "19/30", "23/30", "29/30"];
        assert_eq!(off, angles.iter().map(|s| r(s)).collect::<Vec<_>>());
        for a in off {
            assert_eq!(count(j, a, 1), 6);
            assert_eq!(j.max_block_size(), 2);
        }
        assert_eq!(j.total_dim(), BigInt::from(113));
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn sextic_off_a_conic() {
        let report = assemble(&sextic(&[0; 6]), AssembleOptions::default()).unwrap();
        let j = &report.assemblies[0].jordan;
        for s in [1, 5] {
            let a = UnitRoot::from_index(s, 6);
            assert_eq!(count(j, a, 1), 3);
            assert_eq!(count(j, a, 2), 6);
        }
    }

    #[test]
    fn smooth_quadric_curve() {
        let report = assemble(&smooth(2, 2), AssembleOptions::default()).unwrap();
        let j = &report.assemblies[0].jordan;
        assert_eq!(*j, JordanStructure::diagonal([r("1/2")]));
        assert_eq!(report.dimension, BigInt::from(1));
    }

    #[test]
    fn corollary2_examples() {
        let cp = charpoly_corollary2(&sextic(&[0; 6])).unwrap();
        assert_eq!(cp.degree(), BigInt::from(113));
        for beta in [[0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 1]] {
            let report = assemble(&sextic(&beta), AssembleOptions::default()).unwrap();
            assert_eq!(report.charpoly, cp);
        }

        for d in 2..7u64 {
            let cp = charpoly_corollary2(&smooth(2, d)).unwrap();
            let expected = RootExponentVector::linear(UnitRoot::ONE, -1)
                .rev_mul(&RootExponentVector::power_minus_one(d, ((d - 1).pow(3) + 1) / d));
            assert_eq!(cp, expected);
        }

        let node = ProblemSpec {
            n: 2,
            d: 2,
            singularities: vec![SingularityModel::OrdinaryNode],
            beta: BetaSpec::Given(ints(&[0, 0])),
        };
        let cp = charpoly_corollary2(&node).unwrap();
        assert!(cp.is_empty());
    }

    #[test]
    fn non_polynomial_formula_detected() {
        let spec = ProblemSpec {
            n: 2,
            d: 3,
            singularities: vec![SingularityModel::ExplicitJordan(JordanStructure::diagonal(
                [UnitRoot::ONE; 4],
            ))],
            beta: BetaSpec::Enumerate,
        };
        let err = charpoly_corollary2(&spec).unwrap_err();
        assert!(matches!(err, InfinityError::NonPolynomial { .. }), "{err}");
    }

    #[test]
    fn zeta_examples() {
        let z = zeta_fd(&sextic(&[0; 6])).unwrap();
        let expected: RootExponentVector = (0..6)
            .map(|s| (UnitRoot::from_index(s, 6), BigInt::from(if s == 0 { 8 } else { 9 })))
            .collect();
        assert_eq!(z, expected);
        let z = zeta_fd(&smooth(2, 2)).unwrap();
        assert_eq!(z, RootExponentVector::linear(r("1/2"), 1));
    }

    #[test]
    fn corollary1_examples() {
        let report = assemble(&sextic(&[0, 1, 0, 0, 0, 1]), AssembleOptions::default()).unwrap();
        assert_eq!(
            corollary1_check(&report.assemblies[0].jordan, 2, 6).status,
            CheckStatus::Pass
        );
        let big = JordanStructure::new().with_blocks(r("1/6"), &[5]);
        assert_eq!(corollary1_check(&big, 2, 6).status, CheckStatus::Fail);
        let at_one = JordanStructure::new().with_blocks(UnitRoot::ONE, &[3]);
        assert_eq!(corollary1_check(&at_one, 2, 6).status, CheckStatus::Fail);
        let off = JordanStructure::new().with_blocks(r("1/7"), &[3]);
        assert_eq!(corollary1_check(&off, 2, 6).status, CheckStatus::Fail);
        let ok = JordanStructure::new().with_blocks(r("1/2"), &[3]);
        assert_eq!(corollary1_check(&ok, 2, 6).status, CheckStatus::Pass);
    }

    #[test]
    fn beta_errors() {
        let err = assemble(&sextic(&[0, 7, 0, 0, 0, 7]), AssembleOptions::default()).unwrap_err();
        assert!(matches!(err, InfinityError::AboveUpperBound { s: 1, .. }), "{err}");
        assert!(err.to_string().contains("upper bound 6"));

        let err = assemble(&sextic(&[0, 1, 0, 0, 0, 0]), AssembleOptions::default()).unwrap_err();
        assert!(matches!(err, InfinityError::BetaSymmetry { .. }));

        let err = assemble(&sextic(&[1, 0, 0, 0, 0, 0]), AssembleOptions::default()).unwrap_err();
        assert!(matches!(err, InfinityError::AboveUpperBound { s: 0, .. }));

        let err = assemble(&sextic(&[0, 0, 0]), AssembleOptions::default()).unwrap_err();
        assert!(matches!(err, InfinityError::BetaLength { got: 3, d: 6 }));

        // four generic lines need beta_0 ≥ 3
        let lines = ProblemSpec {
            n: 2,
            d: 4,
            singularities: vec![SingularityModel::OrdinaryNode; 6],
            beta: BetaSpec::Given(ints(&[2, 0, 0, 0])),
        };
        let err = assemble(&lines, AssembleOptions::default()).unwrap_err();
        assert!(matches!(err, InfinityError::BelowLowerBound { s: 0, .. }));
        assert!(err.to_string().contains("lower bound 3"));

        let mixed = ProblemSpec {
            n: 2,
            d: 6,
            singularities: vec![SingularityModel::OrdinaryNode, SingularityModel::brieskorn(&[2, 3])],
            beta: BetaSpec::FromNodes(ProjectivePointSet::new(2, vec![]).unwrap()),
        };
        assert_eq!(
            assemble(&mixed, AssembleOptions::default()).unwrap_err(),
            InfinityError::FromNodesNonNode(1)
        );

        assert_eq!(
            assemble(&smooth(1, 3), AssembleOptions::default()).unwrap_err(),
            InfinityError::DimensionTooSmall(1)
        );
        let too_many = ProblemSpec {
            n: 2,
            d: 2,
            singularities: vec![SingularityModel::OrdinaryNode; 2],
            beta: BetaSpec::Enumerate,
        };
        assert!(matches!(
            assemble(&too_many, AssembleOptions::default()).unwrap_err(),
            InfinityError::MilnorSumTooLarge { .. }
        ));
    }

    #[test]
    fn enumerate_sextic() {
        let mut spec = sextic(&[0; 6]);
        spec.beta = BetaSpec::Enumerate;
        let report = assemble(&spec, AssembleOptions::default()).unwrap();
        let betas: Vec<Vec<BigInt>> = report.assemblies.iter().map(|a| a.beta.clone()).collect();
        let expected: Vec<Vec<BigInt>> = (0..=6).map(|b| ints(&[0, b, 0, 0, 0, b])).collect();
        assert_eq!(betas, expected);
        assert!(!report.truncated);
        assert!(report.all_passed());

        let capped = assemble(&spec, AssembleOptions { enumerate_cap: 3 }).unwrap();
        assert_eq!(capped.assemblies.len(), 3);
        assert!(capped.truncated);
        assert!(!capped.warnings.is_empty());
    }

    #[test]
    fn enumerate_matches_brute_force() {
        // every symmetric beta with small entries that assembles without
        // a negative count, versus the enumeration
        let spec = ProblemSpec {
            n: 2,
            d: 4,
            singularities: vec![
                SingularityModel::OrdinaryNode,
                SingularityModel::OrdinaryNode,
                SingularityModel::brieskorn(&[2, 4]),
            ],
            beta: BetaSpec::Enumerate,
        };
        let local = LocalData::from_spec(&spec).unwrap();
        let chi = local.chi();
        let mut brute = Vec::new();
        for b0 in 0..8i64 {
            for b1 in 0..8i64 {
                for b2 in 0..8i64 {
                    let beta = ints(&[b0, b1, b2, b1]);
                    if assemble_jordan(&local, &chi, &beta).is_ok() {
                        brute.push(beta);
                    }
                }
            }
        }
        let got = enumerate_betas(&local, 1024).unwrap();
        assert_eq!(got.vectors, brute);
    }

    #[test]
    fn raising_beta_moves_one_and_two_blocks() {
        let local = LocalData::from_spec(&sextic(&[0; 6])).unwrap();
        let chi = local.chi();
        let lo = assemble_jordan(&local, &chi, &ints(&[0, 2, 0, 0, 0, 2])).unwrap();
        let hi = assemble_jordan(&local, &chi, &ints(&[0, 3, 0, 0, 0, 3])).unwrap();
        for s in 0..6u64 {
            let a = UnitRoot::from_index(s, 6);
            let (d1, d2) = if s == 1 || s == 5 { (2, -1) } else { (0, 0) };
            assert_eq!(count(&hi, a, 1) - count(&lo, a, 1), d1);
            assert_eq!(count(&hi, a, 2) - count(&lo, a, 2), d2);
        }
        let strip = |j: &JordanStructure| {
            j.iter()
                .filter(|(a, _, _)| !(a == &UnitRoot::from_index(1, 6) || a == &UnitRoot::from_index(5, 6)))
                .map(|(a, l, c)| (a, l, c.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&lo), strip(&hi));
    }
}
