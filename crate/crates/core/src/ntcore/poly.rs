//! Dense univariate polynomials over Q (coefficients low-to-high) and the
//! integer-polynomial helpers the factorizer is built on.

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// `X^n - c`.
    pub fn binomial(n: usize, c: &Rational) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[0] = -c.clone();
        v[n] = Rational::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.divrem(self).1.is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `f(X + b)`.
    pub fn taylor_shift(&self, b: &Rational) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * b;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `f(X^e)`.
    pub fn compose_power(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.deg() * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * e] = c.clone();
        }
        Self::new(v)
    }

    /// `f = content * g` with `g` primitive in Z[X] and positive leading
    /// coefficient.
    pub fn primitive_int(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let a = self.primitive_int().1;
        let b = o.primitive_int().1;
        UniPoly::from_bigints(&zpoly::gcd(&a, &b)).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coef {
            S(String),
            I(i64),
        }
        let raw: Vec<Coef> = Vec::deserialize(d)?;
        let mut v = Vec::with_capacity(raw.len());
        for c in raw {
            v.push(match c {
                Coef::S(s) => parse_rational(&s).map_err(serde::de::Error::custom)?,
                Coef::I(i) => Rational::from_integer(i.into()),
            });
        }
        Ok(UniPoly::new(v))
    }
}

/// Parse a JSON coefficient list such as `["1","0","-2"]`.
pub fn parse_poly_json(s: &str) -> Result<UniPoly> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Integer polynomials as plain coefficient vectors.
pub mod zpoly {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    pub fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn deg(a: &[BigInt]) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        trim(v)
    }

    pub fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(a: &[BigInt]) -> Vec<BigInt> {
        let mut g = content(a);
        if g.is_zero() {
            return Vec::new();
        }
        if a.last().unwrap().is_negative() {
            g = -g;
        }
        a.iter().map(|c| c / &g).collect()
    }

    pub fn derivative(a: &[BigInt]) -> Vec<BigInt> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact division `a / b` in Z[X], or `None` if `b` does not divide `a`.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        if b.is_empty() {
            return None;
        }
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let lc = b.last().unwrap();
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + db].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    r[k + j] -= &c * bc;
                }
            }
            q[k] = c;
        }
        if r[..db].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(trim(q))
    }

    /// Pseudo-remainder of `a` by `b`.
    pub fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lc = b.last().unwrap().clone();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap().clone();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &c * bc;
            }
            r = trim(r);
        }
        r
    }

    /// Primitive gcd in Z[X] (positive leading coefficient).
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut x = primitive(a);
        let mut y = primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = prem(&x, &y);
            x = y;
            y = primitive(&r);
        }
        if x.len() == 1 {
            return vec![BigInt::one()];
        }
        x
    }

    pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in a.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Max-norm of the coefficients.
    pub fn max_norm(a: &[BigInt]) -> BigInt {
        a.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;

    #[test]
    fn division_roundtrip() {
        let f = UniPoly::from_ints(&[27, 0, 0, 0, 0, 0, 1]);
        let g = UniPoly::from_ints(&[3, 0, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), f);
    }

    #[test]
    fn gcd_and_shift() {
        let f = UniPoly::from_ints(&[-1, 0, 1]);
        let g = UniPoly::from_ints(&[1, 1]);
        assert_eq!(f.gcd(&g), g);
        let sh = UniPoly::from_ints(&[1, 0, 1]).taylor_shift(&rat(3, 1));
        assert_eq!(sh, UniPoly::from_ints(&[10, 6, 1]));
    }

    #[test]
    fn primitive_int_form() {
        let f = UniPoly::new(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)]);
        let (c, p) = f.primitive_int();
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(c, rat(-1, 4));
    }

    #[test]
    fn json_roundtrip() {
        let f = parse_poly_json(r#"["1/2", "0", -3]"#).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"["1/2","0","-3"]"#);
        assert_eq!(f.to_string(), "-3*X^2 + 1/2");
    }
}
