//! Local singularities of the hypersurface at infinity and their
//! Milnor numbers and local monodromies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::UnitRoot;
use crate::jordan::JordanStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("Brieskorn-Pham germ has {got} exponents but the ambient dimension is n = {n}")]
    ExponentCount { got: usize, n: u32 },
    #[error("Brieskorn-Pham exponent {0} is below 2")]
    ExponentTooSmall(u64),
    #[error("explicit local monodromy is empty (Milnor number must be at least 1)")]
    EmptyExplicit,
    #[error("singularity count must be at least 1")]
    ZeroCount,
    #[error("unknown singularity type {0:?} (expected brieskorn, node or explicit)")]
    UnknownType(String),
    #[error("singularity of type {kind} is missing the {field:?} field")]
    MissingField { kind: &'static str, field: &'static str },
    #[error("singularity of type {kind} does not take the {field:?} field")]
    UnexpectedField { kind: &'static str, field: &'static str },
}

/// An isolated hypersurface singularity given by its local data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SingularityModel {
    /// The germ `x_1^{a_1} + … + x_n^{a_n}`.
    BrieskornPham { exponents: Vec<u64> },
    /// An `A_1` singularity.
    OrdinaryNode,
    /// Local monodromy supplied directly.
    ExplicitJordan(JordanStructure),
}

impl SingularityModel {
    pub fn brieskorn(exponents: &[u64]) -> Self {
        SingularityModel::BrieskornPham {
            exponents: exponents.to_vec(),
        }
    }

    pub fn validate(&self, n: u32) -> Result<(), SingularityError> {
        match self {
            SingularityModel::BrieskornPham { exponents } => {
                if exponents.len() != n as usize {
                    return Err(SingularityError::ExponentCount {
                        got: exponents.len(),
                        n,
                    });
                }
                if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
                    return Err(SingularityError::ExponentTooSmall(a));
                }
                Ok(())
            }
            SingularityModel::OrdinaryNode => Ok(()),
            SingularityModel::ExplicitJordan(j) if j.is_empty() => {
                Err(SingularityError::EmptyExplicit)
            }
            SingularityModel::ExplicitJordan(_) => Ok(()),
        }
    }

    pub fn is_node(&self) -> bool {
        matches!(self, SingularityModel::OrdinaryNode)
    }
}

/// Milnor number: `∏ (a_j − 1)` for Brieskorn-Pham, 1 for a node, the
/// dimension of the supplied operator otherwise.
pub fn milnor_number(s: &SingularityModel) -> BigInt {
    match s {
        SingularityModel::BrieskornPham { exponents } => exponents
            .iter()
            .map(|&a| BigInt::from(a) - 1)
            .product(),
        SingularityModel::OrdinaryNode => BigInt::one(),
        SingularityModel::ExplicitJordan(j) => j.total_dim(),
    }
}

/// Monodromy on the middle cohomology of the Milnor fiber of a germ in `n`
/// variables.
///
/// Brieskorn-Pham monodromy is semisimple with eigenvalues `Σ k_j/a_j mod 1`
/// over `1 ≤ k_j ≤ a_j − 1`. The eigenvalue multiplicities are accumulated as
/// a distribution over `Z/L`, `L = lcm(a_j)`, so no tuple is enumerated.
pub fn local_monodromy(s: &SingularityModel, n: u32) -> Result<JordanStructure, SingularityError> {
    s.validate(n)?;
    Ok(match s {
        SingularityModel::BrieskornPham { exponents } => {
            let modulus = exponents.iter().fold(1u64, |acc, &a| acc.lcm(&a));
            let size = modulus as usize;
            let mut dist = vec![BigInt::zero(); size];
            dist[0] = BigInt::one();
            for &a in exponents {
                let step = (modulus / a) as usize;
                let mut next = vec![BigInt::zero(); size];
                for (r, c) in dist.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for k in 1..a as usize {
                        next[(r + k * step) % size] += c;
                    }
                }
                dist = next;
            }
            let mut j = JordanStructure::new();
            for (r, c) in dist.into_iter().enumerate() {
                j.add_blocks(UnitRoot::new(r as i128, modulus), 1, c);
            }
            j
        }
        SingularityModel::OrdinaryNode => {
            JordanStructure::diagonal([UnitRoot::new(n as i128, 2)])
        }
        SingularityModel::ExplicitJordan(j) => j.clone(),
    })
}

/// JSON entry for one (possibly replicated) singularity.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SingularityEntry {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanStructure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

impl SingularityEntry {
    pub fn from_model(model: &SingularityModel, count: u64) -> Self {
        let count = (count != 1).then_some(count);
        match model {
            SingularityModel::BrieskornPham { exponents } => SingularityEntry {
                kind: "brieskorn".into(),
                exponents: Some(exponents.clone()),
                jordan: None,
                count,
            },
            SingularityModel::OrdinaryNode => SingularityEntry {
                kind: "node".into(),
                exponents: None,
                jordan: None,
                count,
            },
            SingularityModel::ExplicitJordan(j) => SingularityEntry {
                kind: "explicit".into(),
                exponents: None,
                jordan: Some(j.clone()),
                count,
            },
        }
    }

    /// The model and its replication count.
    pub fn into_model(self) -> Result<(SingularityModel, u64), SingularityError> {
        let count = self.count.unwrap_or(1);
        if count == 0 {
            return Err(SingularityError::ZeroCount);
        }
        let model = match self.kind.as_str() {
            "brieskorn" => {
                if self.jordan.is_some() {
                    return Err(SingularityError::UnexpectedField {
                        kind: "brieskorn",
                        field: "jordan",
                    });
                }
                let exponents = self.exponents.ok_or(SingularityError::MissingField {
                    kind: "brieskorn",
                    field: "exponents",
                })?;
                SingularityModel::BrieskornPham { exponents }
            }
            "node" => {
                if self.exponents.is_some() {
                    return Err(SingularityError::UnexpectedField {
                        kind: "node",
                        field: "exponents",
                    });
                }
                if self.jordan.is_some() {
                    return Err(SingularityError::UnexpectedField {
                        kind: "node",
                        field: "jordan",
                    });
                }
                SingularityModel::OrdinaryNode
            }
            "explicit" => {
                if self.exponents.is_some() {
                    return Err(SingularityError::UnexpectedField {
                        kind: "explicit",
                        field: "exponents",
                    });
                }
                let j = self.jordan.ok_or(SingularityError::MissingField {
                    kind: "explicit",
                    field: "jordan",
                })?;
                SingularityModel::ExplicitJordan(j)
            }
            other => return Err(SingularityError::UnknownType(other.to_string())),
        };
        Ok((model, count))
    }
}
