//! Exact arithmetic in the cyclotomic field `Q(ζ_N) = Q[x]/(Φ_N)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::UnitRoot;

/// Integer coefficients of `Φ_N`, lowest degree first.
pub fn cyclotomic_polynomial(level: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    assert!(level >= 1, "cyclotomic polynomial of level 0");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&level) {
        return p.clone();
    }
    // x^N − 1 divided by Φ_e for every proper divisor e of N
    let mut poly = vec![BigInt::zero(); level as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[level as usize] = BigInt::one();
    for e in 1..level {
        if level.is_multiple_of(e) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(e));
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(level, poly.clone());
    poly
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The field `Q(ζ_N)` with power basis `1, ζ, …, ζ^{φ(N)−1}`.
pub struct CyclotomicField {
    level: u64,
    modulus: Arc<Vec<BigInt>>,
    /// `ζ^k` reduced, for `0 ≤ k < N`.
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})", self.level)
    }
}

impl CyclotomicField {
    pub fn new(level: u64) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.lock().unwrap().get(&level) {
            return f.clone();
        }
        let modulus = cyclotomic_polynomial(level);
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1].clone();
            let mut next = vec![BigInt::zero(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in next.iter_mut().enumerate() {
                    *c -= &top * &modulus[i];
                }
            }
            cur = next;
        }
        let field = Arc::new(CyclotomicField {
            level,
            modulus,
            powers,
        });
        fields.lock().unwrap().insert(level, field.clone());
        field
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> CycloElement {
        CycloElement {
            level: self.level,
            coeffs: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycloElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> CycloElement {
        let mut e = self.zero();
        e.coeffs[0] = BigInt::from(v);
        e
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElement {
        let idx = k.rem_euclid(self.level as i64) as usize;
        CycloElement {
            level: self.level,
            coeffs: self.powers[idx].clone(),
            den: BigInt::one(),
        }
    }

    /// The embedded root of unity, if its order divides the level.
    pub fn embed(&self, alpha: UnitRoot) -> Option<CycloElement> {
        if !self.level.is_multiple_of(alpha.den()) {
            return None;
        }
        Some(self.zeta_pow((alpha.num() * (self.level / alpha.den())) as i64))
    }

    /// Image of an element of `Q(ζ_M)`, `M | N`, under `ζ_M ↦ ζ_N^{N/M}`.
    pub fn lift(&self, e: &CycloElement) -> CycloElement {
        assert_eq!(self.level % e.level, 0, "lift to a non-multiple level");
        if e.level == self.level {
            return e.clone();
        }
        let step = (self.level / e.level) as i64;
        let mut out = self.zero();
        for (i, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.powers[(i as i64 * step) as usize];
            for (o, pc) in out.coeffs.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *o += c * pc;
                }
            }
        }
        out.den = e.den.clone();
        out.normalized()
    }

    fn check(&self, e: &CycloElement) {
        debug_assert_eq!(e.level, self.level, "element from a different field");
    }

    fn combine(
        &self,
        a: &CycloElement,
        b: &CycloElement,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> CycloElement {
        self.check(a);
        self.check(b);
        if a.den == b.den {
            let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| op(x, y)).collect();
            return CycloElement {
                level: self.level,
                coeffs,
                den: a.den.clone(),
            }
            .normalized();
        }
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| op(&(x * &b.den), &(y * &a.den)))
            .collect();
        CycloElement {
            level: self.level,
            coeffs,
            den: &a.den * &b.den,
        }
        .normalized()
    }

    pub fn add(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        self.combine(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        self.combine(a, b, |x, y| x - y)
    }

    pub fn neg(&self, a: &CycloElement) -> CycloElement {
        CycloElement {
            level: self.level,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
            den: a.den.clone(),
        }
    }

    pub fn mul(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        self.check(a);
        self.check(b);
        let deg = self.degree();
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod, &a.den * &b.den)
    }

    /// `a − b·c`, the elimination kernel.
    pub fn sub_mul(&self, a: &CycloElement, b: &CycloElement, c: &CycloElement) -> CycloElement {
        if b.is_zero() || c.is_zero() {
            return a.clone();
        }
        self.sub(a, &self.mul(b, c))
    }

    fn reduce(&self, mut prod: Vec<BigInt>, den: BigInt) -> CycloElement {
        let deg = self.degree();
        for k in (deg..prod.len()).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[k]);
            for j in 0..deg {
                let m = &self.modulus[j];
                if !m.is_zero() {
                    prod[k - deg + j] -= &c * m;
                }
            }
        }
        prod.truncate(deg);
        CycloElement {
            level: self.level,
            coeffs: prod,
            den,
        }
        .normalized()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &CycloElement) -> Option<CycloElement> {
        self.check(a);
        if a.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // invariant: s_i · a ≡ r_i (mod Φ_N), up to the scalar a.den
        let mut r0 = modulus;
        let mut r1 = trim(
            a.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Φ_N is irreducible
        let scale = BigRational::from_integer(a.den.clone()) / &r1[0];
        let mut rats: Vec<BigRational> = s1.into_iter().map(|x| x * &scale).collect();
        rats.resize(self.degree(), BigRational::zero());
        let den = rats
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let coeffs = rats
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        let out = CycloElement {
            level: self.level,
            coeffs,
            den,
        }
        .normalized();
        debug_assert!(self.mul(&out, a).is_one());
        Some(out)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by the zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// An element of some `Q(ζ_N)`: integer coefficients over the power basis
/// and one positive common denominator, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloElement {
    level: u64,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Coefficient of `ζ^i` as an exact rational.
    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.coeffs[i].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.den && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.coeffs {
            if g.is_one() {
                return self;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
        self
    }
}
