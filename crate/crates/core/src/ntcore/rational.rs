//! The rational scalar, its factorization, and multiplicative moduli with
//! rational exponents.

use super::arith::{factor_biguint, ln_biguint, strip_prime};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Iteration budget for Pollard-Brent on integers beyond 64 bits.
pub const FACTOR_BUDGET: u64 = 1 << 18;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x^e` for any integer exponent (x nonzero when e < 0).
pub fn rat_pow(x: &Rational, e: i64) -> Rational {
    let mag = x.pow(e.unsigned_abs().min(i32::MAX as u64) as i32);
    if e.unsigned_abs() > i32::MAX as u64 {
        panic!("exponent out of range");
    }
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Weil height of a rational, `log max(|p|, q)`.
pub fn height_rational(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    ln_biguint(if n > d { n } else { d })
}

/// `x = sign * prod p^e` with nonzero exponents, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub sign: i8,
    pub exponents: Vec<(u64, i64)>,
}

impl PrimeFactorization {
    pub fn ord(&self, p: u64) -> i64 {
        self.exponents
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.exponents[i].1)
            .unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.iter().map(|&(p, _)| p)
    }

    pub fn to_rational(&self) -> Rational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for &(p, e) in &self.exponents {
            let pp = BigUint::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pp;
            } else {
                den *= pp;
            }
        }
        let s = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        Rational::new(BigInt::from_biguint(s, num), BigInt::from(den))
    }

    /// Multiply two factorizations exponentwise.
    pub fn mul(&self, other: &Self) -> Self {
        self.combine(1, other, 1)
    }

    /// `self^a * other^b`.
    pub fn combine(&self, a: i64, other: &Self, b: i64) -> Self {
        let mut m: BTreeMap<u64, i64> = BTreeMap::new();
        for &(p, e) in &self.exponents {
            *m.entry(p).or_default() += a * e;
        }
        for &(p, e) in &other.exponents {
            *m.entry(p).or_default() += b * e;
        }
        let s1 = if self.sign < 0 && a.rem_euclid(2) == 1 { -1 } else { 1 };
        let s2 = if other.sign < 0 && b.rem_euclid(2) == 1 { -1 } else { 1 };
        PrimeFactorization {
            sign: s1 * s2,
            exponents: m.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }
}

fn factor_natural(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    let f = factor_biguint(n, FACTOR_BUDGET);
    if !f.is_complete() {
        return Err(Error::FactorizationIncomplete);
    }
    Ok(f.primes)
}

/// Full factorization of a nonzero rational over primes below 2^64.
pub fn factor_rational(x: &Rational) -> Result<PrimeFactorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m: BTreeMap<u64, i64> = BTreeMap::new();
    for (p, e) in factor_natural(x.numer().magnitude())? {
        *m.entry(p).or_default() += e as i64;
    }
    for (p, e) in factor_natural(x.denom().magnitude())? {
        *m.entry(p).or_default() -= e as i64;
    }
    Ok(PrimeFactorization {
        sign: if x.is_negative() { -1 } else { 1 },
        exponents: m.into_iter().collect(),
    })
}

/// p-adic valuation of a nonzero rational.
pub fn ord_p(x: &Rational, p: u64) -> i64 {
    let mut n = x.numer().magnitude().clone();
    let mut d = x.denom().magnitude().clone();
    strip_prime(&mut n, p) as i64 - strip_prime(&mut d, p) as i64
}

/// A positive real `prod p^{e_p}` with rational exponents. Moduli of
/// radical points and of sequence iterates live here, so every
/// absolute value is an exact linear combination of `log p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Modulus {
    pub exps: BTreeMap<u64, Rational>,
}

impl Modulus {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factorization(f: &PrimeFactorization) -> Self {
        Modulus {
            exps: f
                .exponents
                .iter()
                .map(|&(p, e)| (p, rat_int(e)))
                .collect(),
        }
    }

    pub fn of_rational(x: &Rational) -> Result<Self> {
        Ok(Self::from_factorization(&factor_rational(x)?))
    }

    /// `self^a * other^b` with rational weights.
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Self {
        let mut m: BTreeMap<u64, Rational> = BTreeMap::new();
        for (p, e) in &self.exps {
            *m.entry(*p).or_insert_with(Rational::zero) += e * a;
        }
        for (p, e) in &other.exps {
            *m.entry(*p).or_insert_with(Rational::zero) += e * b;
        }
        m.retain(|_, e| !e.is_zero());
        Modulus { exps: m }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        self.combine(a, &Modulus::one(), &Rational::zero())
    }

    /// Exponent of `p`, so `ord_p = e_p` and `log|.|_p = -e_p log p`.
    pub fn ord(&self, p: u64) -> Rational {
        self.exps.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn ln_archimedean(&self) -> f64 {
        self.exps
            .iter()
            .map(|(p, e)| rat_to_f64(e) * (*p as f64).ln())
            .sum()
    }

    pub fn ln_at(&self, p: u64) -> f64 {
        -rat_to_f64(&self.ord(p)) * (p as f64).ln()
    }

    /// `sum_v max(0, log|x|_v)`.
    pub fn height(&self) -> f64 {
        let fin: f64 = self
            .exps
            .iter()
            .map(|(p, e)| (-rat_to_f64(e) * (*p as f64).ln()).max(0.0))
            .sum();
        fin + self.ln_archimedean().max(0.0)
    }
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let ln = ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude());
    sign * ln.exp()
}

/// `log|x|` for nonzero rational x without overflow.
pub fn ln_abs_rational(x: &Rational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

/// Serde adapter: rationals as "p/q" strings.
pub mod serde_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
