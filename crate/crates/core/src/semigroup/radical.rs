//! Exact points `c^{1/M} e^{2 pi i t}` in canonical form.

use crate::error::{Error, Result};
use crate::ntcore::cyclotomic::rational_perfect_power;
use crate::ntcore::rational::{ln_abs_rational, ord_p, rat_pow, Modulus, Rational};
use crate::ntcore::Place;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// A rational angle in `[0, 1)`, as a fraction of a full turn, in
/// lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    pub num: u64,
    pub den: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const HALF: Angle = Angle { num: 1, den: 2 };

    /// `num/den` reduced modulo 1.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let n = num.rem_euclid(den as i128) as u64;
        let g = n.gcd(&den);
        Angle { num: n / g, den: den / g }
    }

    pub fn add(self, o: Angle) -> Angle {
        let l = self.den.lcm(&o.den);
        Angle::new(
            self.num as i128 * (l / self.den) as i128 + o.num as i128 * (l / o.den) as i128,
            l,
        )
    }

    pub fn times(self, k: i64) -> Angle {
        Angle::new(self.num as i128 * k as i128, self.den)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn from_rational(t: &Rational) -> Result<Angle> {
        let den: u64 = t
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidConfig("angle denominator too large".into()))?;
        let num: i128 = (t.numer() % BigInt::from(den))
            .try_into()
            .map_err(|_| Error::InvalidConfig("angle numerator too large".into()))?;
        Ok(Angle::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `alpha = c^{1/M} e^{2 pi i t}` with `c > 0`, and `(c, M)` reduced so
/// that `c` is not a q-th power for any prime q dividing M (`c = 1`
/// forces `M = 1`). Equality of values is equality of fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadicalPoint {
    c: Rational,
    m: u64,
    t: Angle,
}

impl RadicalPoint {
    /// Canonical point `|c|^{1/m} e^{2 pi i t}`; the sign of `c` is
    /// ignored (signs belong in the angle).
    pub fn new(c: Rational, m: u64, t: Angle) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        if m == 0 {
            return Err(Error::InvalidConfig("root index must be positive".into()));
        }
        let (c, m) = reduce_modulus(c.abs(), m);
        Ok(RadicalPoint { c, m, t })
    }

    pub fn from_rational(x: &Rational) -> Result<Self> {
        let t = if x.is_negative() { Angle::HALF } else { Angle::ZERO };
        Self::new(x.clone(), 1, t)
    }

    pub fn root_of_unity(t: Angle) -> Self {
        RadicalPoint { c: Rational::one(), m: 1, t }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> Angle {
        self.t
    }

    /// Order of the root of unity `e^{2 pi i t}`.
    pub fn q(&self) -> u64 {
        self.t.den
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1 && self.t.den <= 2
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        Some(if self.t.den == 2 { -self.c.clone() } else { self.c.clone() })
    }

    /// `alpha^{M Q} = c^Q`.
    pub fn binomial_relation(&self) -> (u64, Rational) {
        let q = self.q();
        (self.m * q, rat_pow(&self.c, q as i64))
    }

    /// `a * alpha^d` in canonical form.
    pub fn apply(&self, a: &Rational, d: i64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let c = rat_pow(&a.abs(), self.m as i64) * rat_pow(&self.c, d);
        let sign = if a.is_negative() { Angle::HALF } else { Angle::ZERO };
        let t = self.t.times(d).add(sign);
        let (c, m) = reduce_modulus(c, self.m);
        Ok(RadicalPoint { c, m, t })
    }

    pub fn ln_abs(&self) -> f64 {
        ln_abs_rational(&self.c) / self.m as f64
    }

    /// `ord_p(alpha) = ord_p(c) / M`.
    pub fn ord(&self, p: u64) -> Rational {
        Rational::new(ord_p(&self.c, p).into(), BigInt::from(self.m))
    }

    pub fn log_abs_at(&self, v: Place) -> f64 {
        match v {
            Place::Infinite => self.ln_abs(),
            Place::Finite(p) => -crate::ntcore::rational::rat_to_f64(&self.ord(p)) * (p as f64).ln(),
        }
    }

    /// Multiplicative modulus `|c|^{1/M}` with rational exponents.
    pub fn modulus(&self) -> Result<Modulus> {
        Ok(Modulus::of_rational(&self.c)?.scale(&Rational::new(BigInt::one(), BigInt::from(self.m))))
    }

    /// Weil height `h(c) / M`.
    pub fn height(&self) -> f64 {
        crate::ntcore::height_rational(&self.c) / self.m as f64
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.ln_abs().exp(), 2.0 * std::f64::consts::PI * self.t.to_f64())
    }
}

/// Strip common perfect-power structure from `(c, m)`.
pub(crate) fn reduce_modulus(mut c: Rational, mut m: u64) -> (Rational, u64) {
    loop {
        if c.is_one() {
            return (c, 1);
        }
        if m == 1 {
            return (c, 1);
        }
        let (r, e) = rational_perfect_power(&c);
        let g = m.gcd(&(e as u64));
        if g == 1 {
            return (c, m);
        }
        c = rat_pow(&r, (e as u64 / g) as i64);
        m /= g;
    }
}

impl fmt::Display for RadicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^(1/{})*e({})", self.c, self.m, self.t)
    }
}

impl Serialize for RadicalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RadicalPoint", 3)?;
        st.serialize_field("c", &self.c.to_string())?;
        st.serialize_field("M", &self.m)?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};

    #[test]
    fn canonical_forms() {
        let p = RadicalPoint::new(rat(1, 16), 4, Angle::ZERO).unwrap();
        assert_eq!((p.c().clone(), p.m()), (rat(1, 2), 1));
        let p = RadicalPoint::new(rat_int(64), 4, Angle::ZERO).unwrap();
        assert_eq!((p.c().clone(), p.m()), (rat_int(8), 2));
        let p = RadicalPoint::new(rat_int(1), 6, Angle::new(1, 3)).unwrap();
        assert_eq!(p.m(), 1);
    }

    #[test]
    fn apply_examples() {
        let half = RadicalPoint::new(rat(1, 16), 4, Angle::ZERO).unwrap();
        assert_eq!(half.apply(&rat_int(2), 2).unwrap(), half);
        let w = RadicalPoint::root_of_unity(Angle::new(1, 3));
        for d in [-3i64, 2, 5] {
            assert_eq!(w.apply(&rat_int(1), d).unwrap().t(), Angle::new(d as i128, 3));
        }
        let s3 = RadicalPoint::new(rat_int(3), 2, Angle::ZERO).unwrap();
        let r = s3.apply(&rat(1, 3), -2).unwrap();
        assert_eq!(r, RadicalPoint::from_rational(&rat(1, 9)).unwrap());
    }

    #[test]
    fn negative_rationals() {
        let p = RadicalPoint::from_rational(&rat(-1, 2)).unwrap();
        assert_eq!(p.to_rational(), Some(rat(-1, 2)));
        assert_eq!(p.apply(&rat_int(2), 2).unwrap().to_rational(), Some(rat(1, 2)));
        assert_eq!(p.binomial_relation(), (2, rat(1, 4)));
    }
}
