//! Conjugacy classes of operators whose eigenvalues are roots of unity:
//! for each eigenvalue, the multiset of Jordan block sizes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{RootExponentVector, UnitRoot};

/// Eigenvalue → (block size → number of blocks of that size).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JordanStructure {
    blocks: BTreeMap<UnitRoot, BTreeMap<usize, BigInt>>,
}

impl JordanStructure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Semisimple structure with one block of size 1 per listed eigenvalue.
    pub fn diagonal<I: IntoIterator<Item = UnitRoot>>(eigenvalues: I) -> Self {
        let mut j = Self::new();
        for a in eigenvalues {
            j.add_blocks(a, 1, BigInt::one());
        }
        j
    }

    /// Adds `count` blocks of size `size` at `alpha`. A negative count
    /// removes blocks; panics if that would leave a negative count.
    pub fn add_blocks(&mut self, alpha: UnitRoot, size: usize, count: impl Into<BigInt>) {
        assert!(size >= 1, "Jordan block of size 0");
        let count = count.into();
        if count.is_zero() {
            return;
        }
        let inner = self.blocks.entry(alpha).or_default();
        let slot = inner.entry(size).or_default();
        *slot += count;
        assert!(!slot.is_negative(), "negative Jordan block count at {alpha}");
        if slot.is_zero() {
            inner.remove(&size);
        }
        if inner.is_empty() {
            self.blocks.remove(&alpha);
        }
    }

    pub fn with_blocks(mut self, alpha: UnitRoot, sizes: &[usize]) -> Self {
        for &l in sizes {
            self.add_blocks(alpha, l, 1);
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn direct_sum(&self, other: &JordanStructure) -> JordanStructure {
        let mut out = self.clone();
        out.absorb(other);
        out
    }

    pub fn absorb(&mut self, other: &JordanStructure) {
        for (a, inner) in &other.blocks {
            for (l, c) in inner {
                self.add_blocks(*a, *l, c.clone());
            }
        }
    }

    /// `#_l T_α`: number of blocks of size `l` at `alpha`.
    pub fn sharp(&self, alpha: UnitRoot, l: usize) -> BigInt {
        self.blocks
            .get(&alpha)
            .and_then(|inner| inner.get(&l))
            .cloned()
            .unwrap_or_default()
    }

    /// `# T_α`: number of blocks of any size at `alpha`.
    pub fn sharp_total(&self, alpha: UnitRoot) -> BigInt {
        self.blocks
            .get(&alpha)
            .map(|inner| inner.values().sum())
            .unwrap_or_default()
    }

    /// Dimension of the generalized eigenspace at `alpha`.
    pub fn multiplicity(&self, alpha: UnitRoot) -> BigInt {
        self.blocks
            .get(&alpha)
            .map(|inner| inner.iter().map(|(l, c)| c * BigInt::from(*l)).sum())
            .unwrap_or_default()
    }

    pub fn total_dim(&self) -> BigInt {
        self.blocks.keys().map(|a| self.multiplicity(*a)).sum()
    }

    /// Distinct eigenvalues, ascending.
    pub fn spectrum(&self) -> impl Iterator<Item = UnitRoot> + '_ {
        self.blocks.keys().copied()
    }

    /// Block sizes and counts at `alpha`, sizes ascending.
    pub fn blocks_at(&self, alpha: UnitRoot) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.blocks
            .get(&alpha)
            .into_iter()
            .flat_map(|inner| inner.iter().map(|(l, c)| (*l, c)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (UnitRoot, usize, &BigInt)> + '_ {
        self.blocks
            .iter()
            .flat_map(|(a, inner)| inner.iter().map(move |(l, c)| (*a, *l, c)))
    }

    pub fn max_block_size(&self) -> usize {
        self.iter().map(|(_, l, _)| l).max().unwrap_or(0)
    }

    pub fn is_semisimple(&self) -> bool {
        self.max_block_size() <= 1
    }

    pub fn char_poly(&self) -> RootExponentVector {
        self.spectrum()
            .map(|a| (a, self.multiplicity(a)))
            .collect()
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        self.blocks
            .iter()
            .all(|(a, inner)| self.blocks.get(&a.conjugate()) == Some(inner))
    }

    /// Block sizes at `alpha`, descending, each repeated by its count.
    /// `None` if a count does not fit in memory-sized integers.
    pub fn listed_blocks(&self, alpha: UnitRoot) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (l, c) in self.blocks_at(alpha).collect::<Vec<_>>().into_iter().rev() {
            let c = c.to_usize()?;
            out.extend(std::iter::repeat_n(l, c));
        }
        Some(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenEntry {
    eigenvalue: UnitRoot,
    blocks: Vec<usize>,
}

impl Serialize for JordanStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.blocks.len());
        for a in self.spectrum() {
            let blocks = self.listed_blocks(a).ok_or_else(|| {
                serde::ser::Error::custom(format!("block count at {a} too large to list"))
            })?;
            entries.push(EigenEntry {
                eigenvalue: a,
                blocks,
            });
        }
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JordanStructure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<EigenEntry>::deserialize(deserializer)?;
        let mut j = JordanStructure::new();
        for e in entries {
            for l in e.blocks {
                if l == 0 {
                    return Err(serde::de::Error::custom(format!(
                        "Jordan block of size 0 at eigenvalue {}",
                        e.eigenvalue
                    )));
                }
                j.add_blocks(e.eigenvalue, l, 1);
            }
        }
        Ok(j)
    }
}
