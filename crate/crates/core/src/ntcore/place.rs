//! Places of Q and normalized logarithmic absolute values.

use super::arith::is_prime_u64;
use super::rational::{factor_rational, ln_abs_rational, ord_p, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// The archimedean place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::InvalidConfig(format!("{p} is not prime")))
        }
    }

    /// Size of the residue field, with the convention N(inf) = 2.
    pub fn norm(&self) -> u64 {
        match self {
            Place::Infinite => 2,
            Place::Finite(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "oo" | "∞" | "infinity" => Ok(Place::Infinite),
            t => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            N(u64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::N(p) => Place::finite(p).map_err(serde::de::Error::custom),
        }
    }
}

/// Exact shape of a log absolute value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactLog {
    /// `coeff * log p`, where `coeff = -ord_p(x)`.
    PrimeMultiple { p: u64, coeff: i64 },
    /// `log |x|` of a rational x.
    LogOf(Rational),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogAbs {
    pub value: f64,
    pub exact: ExactLog,
}

/// Normalized `log|x|_v`.
pub fn log_abs(x: &Rational, v: Place) -> Result<LogAbs> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match v {
        Place::Infinite => {
            let a = num_traits::Signed::abs(x);
            LogAbs {
                value: ln_abs_rational(&a),
                exact: ExactLog::LogOf(a),
            }
        }
        Place::Finite(p) => {
            let coeff = -ord_p(x, p);
            LogAbs {
                value: coeff as f64 * (p as f64).ln(),
                exact: ExactLog::PrimeMultiple { p, coeff },
            }
        }
    })
}

/// Bookkeeping proof of the product formula: for each prime, the
/// archimedean expansion `log|x| = sum ord_p(x) log p` and the finite
/// term `-ord_p(x) log p` carry opposite integer coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFormulaWitness {
    /// `(p, coefficient in log|x|_inf, coefficient in log|x|_p)`.
    pub rows: Vec<(u64, i64, i64)>,
    pub exact_zero: bool,
    /// Float sum of all places, for display.
    pub float_sum: f64,
}

pub fn product_formula_check(x: &Rational) -> Result<ProductFormulaWitness> {
    let f = factor_rational(x)?;
    let rows: Vec<(u64, i64, i64)> = f
        .exponents
        .iter()
        .map(|&(p, e)| (p, e, -ord_p(x, p)))
        .collect();
    let recon = f.to_rational();
    let exact_zero = recon == *x && rows.iter().all(|&(_, a, b)| a + b == 0);
    let float_sum = ln_abs_rational(x)
        + rows
            .iter()
            .map(|&(p, _, b)| b as f64 * (p as f64).ln())
            .sum::<f64>();
    Ok(ProductFormulaWitness {
        rows,
        exact_zero,
        float_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;

    #[test]
    fn log_abs_examples() {
        let l = log_abs(&rat(12, 1), Place::Finite(2)).unwrap();
        assert_eq!(l.exact, ExactLog::PrimeMultiple { p: 2, coeff: -2 });
        assert!((l.value + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_abs(&rat(1, 1), Place::Finite(5)).unwrap().value, 0.0);
        assert!((log_abs(&rat(3, 2), Place::Infinite).unwrap().value - 0.405465).abs() < 1e-6);
        assert_eq!(log_abs(&rat(0, 1), Place::Infinite), Err(Error::ZeroInput));
    }

    #[test]
    fn product_formula_examples() {
        for x in [rat(10, 21), rat(1, 1), rat(-7, 1)] {
            let w = product_formula_check(&x).unwrap();
            assert!(w.exact_zero);
            assert!(w.float_sum.abs() < 1e-12);
        }
    }

    #[test]
    fn places_parse() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Finite(7));
        assert!("8".parse::<Place>().is_err());
        assert_eq!(Place::Infinite.norm(), 2);
    }
}
