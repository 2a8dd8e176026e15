//! Euler phi, cyclotomic polynomials, and the exponent e(a, Q).

use super::arith::{divisors, moebius, perfect_power};
use super::poly::{zpoly, UniPoly};
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use super::arith::euler_phi;

/// `Phi_n = prod_{d | n} (X^d - 1)^{mu(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        let mut b = vec![BigInt::zero(); d as usize + 1];
        b[0] = -BigInt::one();
        b[d as usize] = BigInt::one();
        match moebius(n / d) {
            1 => num = zpoly::mul(&num, &b),
            -1 => den = zpoly::mul(&den, &b),
            _ => {}
        }
    }
    let q = zpoly::div_exact(&num, &den).expect("cyclotomic quotient is exact");
    UniPoly::from_bigints(&q)
}

/// Largest k with `x = r^k` for a positive rational x != 1.
pub fn rational_perfect_power(x: &Rational) -> (Rational, u32) {
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let (rn, en) = perfect_power(n);
    let (rd, ed) = perfect_power(d);
    let e = match (n.is_one(), d.is_one()) {
        (true, true) => 1,
        (true, false) => ed,
        (false, true) => en,
        (false, false) => en.gcd(&ed),
    };
    let root = |v: &BigUint, r: &BigUint, ev: u32| -> BigUint {
        if v.is_one() {
            BigUint::one()
        } else {
            r.pow(ev / e)
        }
    };
    let num = root(n, &rn, en);
    let den = root(d, &rd, ed);
    (Rational::new(BigInt::from(num), BigInt::from(den)), e)
}

/// `e(a, Q)`: the largest l with `a = xi * x^l`, `xi = +-1`. Returns
/// `(l, x, xi)`, preferring `xi = +1` (possible whenever a > 0 or l is
/// odd).
pub fn max_power_exponent(a: &Rational) -> Result<(u32, Rational, i8)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let abs = a.abs();
    if abs.is_one() {
        return Err(Error::RootOfUnityInput);
    }
    let (r, l) = rational_perfect_power(&abs);
    if a.is_positive() {
        Ok((l, r, 1))
    } else if l % 2 == 1 {
        Ok((l, -r, 1))
    } else {
        Ok((l, r, -1))
    }
}

/// Integer k-th root of a rational if it exists.
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    if k == 1 {
        return Some(x.clone());
    }
    let neg = x.is_negative();
    if neg && k.is_multiple_of(2) {
        return None;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if rn.pow(k) != *n || rd.pow(k) != *d {
        return None;
    }
    let r = Rational::new(BigInt::from(rn), BigInt::from(rd));
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{factor_rational, rat};

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_poly(1), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), UniPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), UniPoly::from_ints(&[1, 0, -1, 0, 1]));
        for n in 1..=60u64 {
            assert_eq!(cyclotomic_poly(n).deg() as u64, euler_phi(n));
        }
        assert_eq!(euler_phi(12), (1..12u64).filter(|k| k.gcd(&12) == 1).count() as u64);
    }

    #[test]
    fn power_exponents() {
        assert_eq!(max_power_exponent(&rat(16, 1)).unwrap(), (4, rat(2, 1), 1));
        assert_eq!(max_power_exponent(&rat(-8, 1)).unwrap(), (3, rat(-2, 1), 1));
        assert_eq!(max_power_exponent(&rat(12, 1)).unwrap(), (1, rat(12, 1), 1));
        assert_eq!(max_power_exponent(&rat(-4, 9)).unwrap(), (2, rat(2, 3), -1));
        assert_eq!(max_power_exponent(&rat(1, 8)).unwrap(), (3, rat(1, 2), 1));
        assert_eq!(max_power_exponent(&rat(-1, 1)), Err(Error::RootOfUnityInput));
    }

    #[test]
    fn exponent_matches_factorization_gcd() {
        for (n, d) in [(64, 1), (1, 27), (36, 49), (-32, 243), (72, 1), (-1, 4)] {
            let a = rat(n, d);
            let f = factor_rational(&a).unwrap();
            let g = f.exponents.iter().fold(0i64, |g, &(_, e)| g.gcd(&e));
            assert_eq!(max_power_exponent(&a).unwrap().0 as i64, g);
        }
    }
}
