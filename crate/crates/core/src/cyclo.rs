//! Roots of unity as elements of Q/Z, and formal products of linear factors
//! whose roots are roots of unity.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRootError {
    #[error("expected a fraction \"num/den\", got {0:?}")]
    Malformed(String),
    #[error("denominator must be positive in {0:?}")]
    ZeroDenominator(String),
}

/// The root of unity `e^{2πi·num/den}`, stored as a reduced fraction in `[0, 1)`.
///
/// `den` is the multiplicative order of the root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnitRoot {
    num: u64,
    den: u64,
}

impl UnitRoot {
    pub const ONE: UnitRoot = UnitRoot { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1. Panics if `den == 0`.
    pub fn new(num: i128, den: u64) -> UnitRoot {
        assert!(den > 0, "root of unity with zero denominator");
        let d = den as i128;
        let r = num.rem_euclid(d);
        let g = r.gcd(&d);
        UnitRoot {
            num: (r / g) as u64,
            den: (d / g) as u64,
        }
    }

    /// `e^{2πi·s/d}`.
    pub fn from_index(s: u64, d: u64) -> UnitRoot {
        UnitRoot::new(s as i128, d)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(self, other: UnitRoot) -> UnitRoot {
        let l = (self.den as u128).lcm(&(other.den as u128));
        let a = self.num as u128 * (l / self.den as u128);
        let b = other.num as u128 * (l / other.den as u128);
        let den = u64::try_from(l).expect("root of unity order overflows u64");
        UnitRoot::new(((a + b) % l) as i128, den)
    }

    pub fn pow(self, k: i64) -> UnitRoot {
        let d = self.den as i128;
        let e = (k as i128).rem_euclid(d);
        UnitRoot::new(self.num as i128 * e, self.den)
    }

    pub fn conjugate(self) -> UnitRoot {
        UnitRoot::new(-(self.num as i128), self.den)
    }

    /// All `m` solutions of `α^m = self`, ascending.
    pub fn mth_roots(self, m: u64) -> Vec<UnitRoot> {
        assert!(m >= 1, "mth_roots needs m >= 1");
        let den = self.den.checked_mul(m).expect("root of unity order overflows u64");
        (0..m)
            .map(|j| UnitRoot::new(self.num as i128 + j as i128 * self.den as i128, den))
            .collect()
    }

    /// Is `self^exp == 1`?
    pub fn is_root_of(self, exp: u64) -> bool {
        exp.is_multiple_of(self.den)
    }
}

impl Ord for UnitRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for UnitRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UnitRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for UnitRoot {
    type Err = ParseRootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: i128 = n.parse().map_err(|_| ParseRootError::Malformed(s.to_string()))?;
        let den: u64 = d.parse().map_err(|_| ParseRootError::Malformed(s.to_string()))?;
        if den == 0 {
            return Err(ParseRootError::ZeroDenominator(s.to_string()));
        }
        Ok(UnitRoot::new(num, den))
    }
}

impl Serialize for UnitRoot {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitRoot {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer (de)serialization: a JSON number when it fits in `i64`, a decimal
/// string otherwise. Both forms are accepted on input.
pub(crate) mod bigint_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    pub fn to_repr(v: &BigInt) -> serde_json::Value {
        match v.to_i64() {
            Some(x) => serde_json::Value::from(x),
            None => serde_json::Value::from(v.to_string()),
        }
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => Repr::Small(x).serialize(s),
            None => Repr::Big(v.to_string()).serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(x) => Ok(BigInt::from(x)),
            Repr::Big(s) => s.trim().parse().map_err(serde::de::Error::custom),
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let reprs: Vec<serde_json::Value> = v.iter().map(to_repr).collect();
            reprs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let reprs = Vec::<Repr>::deserialize(d)?;
            reprs
                .into_iter()
                .map(|r| match r {
                    Repr::Small(x) => Ok(BigInt::from(x)),
                    Repr::Big(s) => s.trim().parse().map_err(serde::de::Error::custom),
                })
                .collect()
        }
    }
}

/// A formal product `∏ (λ − α)^{e_α}` over roots of unity `α`, with integer
/// exponents of either sign. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RootExponentVector {
    factors: BTreeMap<UnitRoot, BigInt>,
}

impl RootExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(λ − α)^e`.
    pub fn linear(alpha: UnitRoot, e: impl Into<BigInt>) -> Self {
        let mut v = Self::new();
        v.add_exponent(alpha, e.into());
        v
    }

    /// `(λ^d − 1)^e`.
    pub fn power_minus_one(d: u64, e: impl Into<BigInt>) -> Self {
        let e = e.into();
        let mut v = Self::new();
        for s in 0..d {
            v.add_exponent(UnitRoot::from_index(s, d), e.clone());
        }
        v
    }

    pub fn add_exponent(&mut self, alpha: UnitRoot, e: BigInt) {
        if e.is_zero() {
            return;
        }
        let slot = self.factors.entry(alpha).or_default();
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(&alpha);
        }
    }

    pub fn exponent(&self, alpha: UnitRoot) -> BigInt {
        self.factors.get(&alpha).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> BigInt {
        self.factors.values().sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|e| !e.is_negative())
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (UnitRoot, &BigInt)> + '_ {
        self.factors.iter().map(|(a, e)| (*a, e))
    }

    /// Product of two formal products: exponents add.
    pub fn rev_mul(&self, other: &RootExponentVector) -> RootExponentVector {
        let mut out = self.clone();
        for (a, e) in other.iter() {
            out.add_exponent(a, e.clone());
        }
        out
    }

    pub fn inverse(&self) -> RootExponentVector {
        RootExponentVector {
            factors: self.factors.iter().map(|(a, e)| (*a, -e)).collect(),
        }
    }

    pub fn cyclotomic_display(&self) -> Vec<DisplayFactor> {
        cyclotomic_display(self)
    }
}

impl FromIterator<(UnitRoot, BigInt)> for RootExponentVector {
    fn from_iter<I: IntoIterator<Item = (UnitRoot, BigInt)>>(iter: I) -> Self {
        let mut v = RootExponentVector::new();
        for (a, e) in iter {
            v.add_exponent(a, e);
        }
        v
    }
}

impl Serialize for RootExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.factors.len()))?;
        for (a, e) in &self.factors {
            map.serialize_entry(a, &bigint_json::to_repr(e))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RootExponentVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Exp(#[serde(with = "bigint_json")] BigInt);
        let raw = BTreeMap::<UnitRoot, Exp>::deserialize(deserializer)?;
        let mut v = RootExponentVector::new();
        for (a, Exp(e)) in raw {
            if e.is_zero() {
                return Err(serde::de::Error::custom(format!(
                    "zero exponent stored for root {a}"
                )));
            }
            v.add_exponent(a, e);
        }
        Ok(v)
    }
}

/// One factor of a human-readable factorization.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DisplayFactor {
    /// `Φ_order(λ)^exponent`.
    Cyclotomic {
        order: u64,
        #[serde(with = "bigint_json")]
        exponent: BigInt,
    },
    /// `(λ − e^{2πi·root})^exponent`.
    Linear {
        root: UnitRoot,
        #[serde(with = "bigint_json")]
        exponent: BigInt,
    },
}

impl DisplayFactor {
    pub fn expand(&self) -> RootExponentVector {
        match self {
            DisplayFactor::Cyclotomic { order, exponent } => primitive_roots(*order)
                .map(|a| (a, exponent.clone()))
                .collect(),
            DisplayFactor::Linear { root, exponent } => {
                RootExponentVector::linear(*root, exponent.clone())
            }
        }
    }
}

impl fmt::Display for DisplayFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisplayFactor::Cyclotomic { order, exponent } => write!(f, "Φ_{order}^{exponent}"),
            DisplayFactor::Linear { root, exponent } if root.is_one() => {
                write!(f, "(λ−1)^{exponent}")
            }
            DisplayFactor::Linear { root, exponent } => {
                write!(f, "(λ−e^{{2πi·{root}}})^{exponent}")
            }
        }
    }
}

/// Primitive `q`-th roots of unity, ascending.
pub fn primitive_roots(q: u64) -> impl Iterator<Item = UnitRoot> {
    (0..q)
        .filter(move |p| p.gcd(&q) == 1)
        .map(move |p| UnitRoot::new(p as i128, q))
}

/// Groups full Galois orbits (all primitive `q`-th roots) into `Φ_q^e`,
/// taking the largest common exponent of one sign. Whatever remains is
/// listed as explicit linear factors.
pub fn cyclotomic_display(p: &RootExponentVector) -> Vec<DisplayFactor> {
    let mut rest = p.clone();
    let mut orders: Vec<u64> = p.iter().map(|(a, _)| a.order()).collect();
    orders.sort_unstable();
    orders.dedup();

    let mut out = Vec::new();
    for q in orders {
        let exps: Vec<BigInt> = primitive_roots(q).map(|a| rest.exponent(a)).collect();
        let common = if exps.iter().all(|e| e.is_positive()) {
            exps.iter().min().cloned()
        } else if exps.iter().all(|e| e.is_negative()) {
            exps.iter().max().cloned()
        } else {
            None
        };
        if let Some(e) = common {
            for a in primitive_roots(q) {
                rest.add_exponent(a, -e.clone());
            }
            out.push(DisplayFactor::Cyclotomic { order: q, exponent: e });
        }
    }
    for (root, e) in rest.iter() {
        out.push(DisplayFactor::Linear {
            root,
            exponent: e.clone(),
        });
    }
    out
}

/// Renders a factor list as `Φ_6^1 · (λ−1)^3`; the empty product is `1`.
pub fn format_factors(factors: &[DisplayFactor]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" · ")
}
