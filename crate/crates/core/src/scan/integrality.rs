//! Meeting of reductions and S-integrality relative to a rational beta.
//!
//! With `F_h(r, s) = L prod_sigma (r - s sigma(alpha))` the primitive
//! minimal polynomial of alpha homogenised at `beta = r/s`, a conjugate
//! of alpha and beta have the same reduction mod p exactly when p divides
//! `F_h(r, s)`: all conjugates share one p-adic valuation, and each of the
//! cases (both integral, both not, mixed) reduces to the sign of
//! `ord_p F_h(r, s)`.

use crate::error::{Error, Result};
use crate::ntcore::arith::{factor_biguint, strip_prime, IntFactorization};
use crate::ntcore::rational::Rational;
use crate::ntcore::Place;
use crate::preper::modular::norm_at;
use crate::preper::orbit::{galois_orbit, GaloisOrbit};
use crate::semigroup::RadicalPoint;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

/// Pollard-Brent budget used when listing bad primes.
pub const BAD_PRIME_BUDGET: u64 = 1 << 10;

/// `F_h(r, s)`, nonzero unless beta is a conjugate of alpha.
pub fn meeting_norm(orbit: &GaloisOrbit, beta: &Rational) -> Result<BigInt> {
    let f = norm_at(orbit, beta)?;
    if f.is_zero() {
        return Err(Error::BetaIsConjugate);
    }
    Ok(f)
}

pub fn meets_at_prime(alpha: &RadicalPoint, beta: &Rational, p: u64) -> Result<bool> {
    let f = meeting_norm(&galois_orbit(alpha)?, beta)?;
    Ok((f % BigInt::from(p)).is_zero())
}

/// Primes where some conjugate of alpha meets beta. A factor that could
/// not be split within the budget is kept whole in `unfactored`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPrimes {
    pub primes: Vec<u64>,
    #[serde(serialize_with = "ser_opt_big")]
    pub unfactored: Option<BigUint>,
}

fn ser_opt_big<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl BadPrimes {
    pub fn of_norm(f: &BigInt, budget: u64) -> Self {
        Self::from_factorization(&factor_biguint(f.magnitude(), budget))
    }

    pub fn from_factorization(fac: &IntFactorization) -> Self {
        BadPrimes {
            primes: fac.primes.iter().map(|&(p, _)| p).collect(),
            unfactored: (!fac.cofactor.is_one()).then(|| fac.cofactor.clone()),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

pub fn bad_primes(alpha: &RadicalPoint, beta: &Rational) -> Result<BadPrimes> {
    let f = meeting_norm(&galois_orbit(alpha)?, beta)?;
    Ok(BadPrimes::of_norm(&f, BAD_PRIME_BUDGET))
}

/// True when `|f|` has no prime factor outside `S`; no factoring needed.
pub fn norm_is_s_unit(f: &BigInt, s: &[Place]) -> bool {
    let mut n: BigUint = f.magnitude().clone();
    for v in s {
        if let Place::Finite(p) = v {
            strip_prime(&mut n, *p);
        }
    }
    n.is_one()
}

pub fn is_s_integral(alpha: &RadicalPoint, beta: &Rational, s: &[Place]) -> Result<bool> {
    let f = meeting_norm(&galois_orbit(alpha)?, beta)?;
    Ok(norm_is_s_unit(&f, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};
    use crate::ntcore::{newton_polygon_root_valuations, rational::ord_p};
    use crate::preper::minimal_polynomial;
    use crate::semigroup::Angle;
    use num_traits::Signed;

    /// Meeting straight from the projective-line reading: both integral
    /// with a positive root valuation of f(X + beta), or both not integral.
    fn meets_oracle(alpha: &RadicalPoint, beta: &Rational, p: u64) -> bool {
        let va = alpha.ord(p);
        let vb = ord_p(beta, p);
        if va.is_negative() {
            return vb < 0;
        }
        if vb < 0 {
            return false;
        }
        let f = minimal_polynomial(alpha).unwrap().taylor_shift(beta);
        newton_polygon_root_valuations(&f, p).iter().any(|v| v.is_positive())
    }

    #[test]
    fn examples() {
        let half = RadicalPoint::from_rational(&rat(1, 2)).unwrap();
        assert!(meets_at_prime(&half, &rat_int(3), 5).unwrap());
        assert!(!meets_at_prime(&half, &rat_int(3), 2).unwrap());
        let i = RadicalPoint::root_of_unity(Angle::new(1, 4));
        assert!(meets_at_prime(&i, &rat_int(3), 5).unwrap());
        assert_eq!(bad_primes(&half, &rat_int(3)).unwrap().primes, vec![5]);
        assert_eq!(bad_primes(&i, &rat_int(3)).unwrap().primes, vec![2, 5]);
        let z3 = RadicalPoint::root_of_unity(Angle::new(1, 3));
        assert_eq!(bad_primes(&z3, &rat_int(2)).unwrap().primes, vec![7]);

        let s5 = [Place::Infinite, Place::Finite(5)];
        assert!(is_s_integral(&half, &rat_int(3), &s5).unwrap());
        assert!(!is_s_integral(&half, &rat_int(3), &[Place::Infinite]).unwrap());
        assert!(is_s_integral(&z3, &rat_int(2), &[Place::Infinite, Place::Finite(7)]).unwrap());
        assert_eq!(bad_primes(&half, &rat(1, 2)), Err(Error::BetaIsConjugate));
    }

    #[test]
    fn agrees_with_polygon_reading() {
        let mut pts = vec![];
        for (c, m) in [(rat_int(1), 1u64), (rat(1, 2), 1), (rat(1, 3), 2), (rat(9, 4), 3), (rat(1, 24), 5), (rat_int(12), 2)] {
            for q in [1u64, 2, 3, 4, 6] {
                for j in 0..q {
                    pts.push(RadicalPoint::new(c.clone(), m, Angle::new(j as i128, q)).unwrap());
                }
            }
        }
        for a in &pts {
            for b in [rat_int(2), rat_int(3), rat(5, 2), rat(1, 4), rat(-7, 3), rat(2, 9)] {
                for p in [2u64, 3, 5, 7, 11, 13] {
                    let Ok(got) = meets_at_prime(a, &b, p) else { continue };
                    assert_eq!(got, meets_oracle(a, &b, p), "{a} vs {b} at {p}");
                }
            }
        }
    }
}
