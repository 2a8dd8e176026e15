//! Galois orbits of radical points.
//!
//! For `alpha = gamma zeta_n^{x0}` with `gamma = c^{1/M} > 0` and
//! `n = lcm(M, Q)`, the conjugates are `gamma zeta_n^{u x0 + b n/M}` for
//! `u` a unit mod n and `b` mod M, except that when `M` is even and
//! `sqrt(c)` lies in `Q(zeta_n)` the pair must satisfy
//! `(-1)^b = chi(u)` with `chi` the quadratic character of `Q(sqrt c)`.
//! Either way the orbit is a union of cosets `x + step Z` of size `e`,
//! and the minimal polynomial is `prod_rho (X^e - kappa zeta_n^{e x_rho})`
//! with `kappa = gamma^e`.

use crate::error::{Error, Result};
use crate::ntcore::arith::{factor_u64, kronecker, lcm_u64};
use crate::ntcore::rational::{rat_pow, Rational};
use crate::semigroup::{Angle, RadicalPoint};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;

/// Squarefree kernel `d` of `c` (so `sqrt c` is a rational multiple of
/// `sqrt d`) and the fundamental discriminant of `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    pub d_primes: Vec<u64>,
    pub disc: i128,
}

impl QuadraticData {
    pub fn conductor(&self) -> u128 {
        self.disc.unsigned_abs()
    }

    /// `chi(u) = (D/u)`.
    pub fn chi(&self, u: u64) -> i32 {
        let d = i64::try_from(self.disc).expect("discriminant fits in i64");
        kronecker(d, u)
    }
}

pub fn quadratic_data(c: &Rational) -> Result<QuadraticData> {
    let prod = c.numer().magnitude() * c.denom().magnitude();
    let f = crate::ntcore::arith::factor_biguint(&prod, crate::ntcore::rational::FACTOR_BUDGET);
    if !f.is_complete() {
        return Err(Error::FactorizationIncomplete);
    }
    let d_primes: Vec<u64> = f.primes.iter().filter(|&&(_, e)| e % 2 == 1).map(|&(p, _)| p).collect();
    let mut d: i128 = 1;
    for &p in &d_primes {
        d = d.checked_mul(p as i128).ok_or(Error::FactorizationIncomplete)?;
    }
    let disc = if d % 4 == 1 { d } else { 4 * d };
    Ok(QuadraticData { d_primes, disc })
}

/// The conjugates of a radical point, grouped into cosets.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisOrbit {
    pub point: RadicalPoint,
    /// Conjugates are `gamma zeta_n^y`.
    pub n: u64,
    /// Coset size; `kappa = gamma^e`.
    pub e: u64,
    /// Coset representatives `x_rho` in `[0, n/e)`, ascending.
    pub residues: Vec<u64>,
    /// `kappa = sqrt(c)` rather than `c`.
    pub restricted: Option<QuadraticData>,
}

impl GaloisOrbit {
    pub fn degree(&self) -> u64 {
        self.e * self.residues.len() as u64
    }

    pub fn step(&self) -> u64 {
        self.n / self.e
    }

    /// All exponents `y` with conjugate `gamma zeta_n^y`, ascending.
    pub fn exponents(&self) -> Vec<u64> {
        let step = self.step();
        let mut ys: Vec<u64> = self
            .residues
            .iter()
            .flat_map(|&x| (0..self.e).map(move |j| x + j * step))
            .collect();
        ys.sort_unstable();
        ys
    }

    pub fn angles(&self) -> Vec<Angle> {
        self.exponents().into_iter().map(|y| Angle::new(y as i128, self.n)).collect()
    }

    pub fn conjugate_points(&self) -> Vec<RadicalPoint> {
        self.angles()
            .into_iter()
            .map(|t| RadicalPoint::new(self.point.c().clone(), self.point.m(), t).expect("nonzero radicand"))
            .collect()
    }

    /// `log |kappa|`.
    pub fn ln_kappa(&self) -> f64 {
        let l = crate::ntcore::rational::ln_abs_rational(self.point.c());
        if self.restricted.is_some() {
            l / 2.0
        } else {
            l
        }
    }

    pub fn ln_gamma(&self) -> f64 {
        self.point.ln_abs()
    }

    /// Complex conjugates in exponent order.
    pub fn complex_conjugates(&self) -> Vec<Complex64> {
        let r = self.ln_gamma().exp();
        self.exponents()
            .into_iter()
            .map(|y| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * y as f64 / self.n as f64))
            .collect()
    }

    /// Leading coefficient `L` of the primitive integer minimal
    /// polynomial: `prod_p p^{deg * max(0, -ord_p c) / M}`.
    pub fn lead(&self) -> BigUint {
        let deg = self.degree();
        let m = self.point.m();
        let den = self.point.c().denom().magnitude();
        if den.is_one() {
            return BigUint::one();
        }
        // den^{deg/M}: deg * ord_p(den) / M is an integer for each p
        let g = deg.gcd(&m);
        let num_exp = deg / g;
        let root_exp = m / g;
        let r = den.nth_root(root_exp as u32);
        debug_assert_eq!(r.pow(root_exp as u32), *den);
        r.pow(num_exp as u32)
    }

    /// `ln |L prod_sigma (r - sigma alpha)|` from the complex conjugates.
    pub fn ln_norm_float(&self, r: &Rational) -> f64 {
        let z = crate::ntcore::rational::rat_to_f64(r);
        let ln_l = crate::ntcore::arith::ln_biguint(&self.lead());
        let mut total = ln_l;
        for c in self.complex_conjugates() {
            total += (c - z).norm().ln();
        }
        total
    }
}

/// Compute the Galois orbit of `x`.
pub fn galois_orbit(x: &RadicalPoint) -> Result<GaloisOrbit> {
    let m = x.m();
    let q = x.q();
    let n = lcm_u64(m, q);
    let x0 = x.t().num * (n / q);
    let g0 = n / m;
    let mut restricted = None;
    if m.is_multiple_of(2) {
        let qd = quadratic_data(x.c())?;
        if (n as u128).is_multiple_of(qd.conductor()) {
            restricted = Some(qd);
        }
    }
    let units = units_mod(n);
    let (e, step) = match restricted {
        Some(_) => (m / 2, 2 * g0),
        None => (m, g0),
    };
    let mut residues: Vec<u64> = units
        .iter()
        .map(|&u| {
            let base = (u as u128 * x0 as u128 % n as u128) as u64;
            let shift = match &restricted {
                Some(qd) if qd.chi(u) < 0 => g0,
                _ => 0,
            };
            (base + shift) % step
        })
        .collect();
    residues.sort_unstable();
    residues.dedup();
    Ok(GaloisOrbit { point: x.clone(), n, e, residues, restricted })
}

/// Units modulo n, ascending.
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(p, _)| p).collect();
    (1..n).filter(|u| primes.iter().all(|p| u % p != 0)).collect()
}

/// `c^Q` and `MQ`, the binomial every conjugate satisfies.
pub fn binomial_of(x: &RadicalPoint) -> (u64, Rational) {
    let q = x.q();
    (x.m() * q, rat_pow(x.c(), q as i64))
}

/// `ln |L|` without forming the integer.
pub fn ln_lead(orbit: &GaloisOrbit) -> f64 {
    let den = orbit.point.c().denom().magnitude();
    crate::ntcore::arith::ln_biguint(den) * orbit.degree() as f64 / orbit.point.m() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};

    #[test]
    fn orbit_degrees() {
        let sqrt_m3 = RadicalPoint::new(rat_int(3), 2, Angle::new(1, 4)).unwrap();
        let o = galois_orbit(&sqrt_m3).unwrap();
        assert_eq!(o.degree(), 2);
        assert!(o.restricted.is_none());

        let w = RadicalPoint::new(rat_int(3), 2, Angle::new(1, 12)).unwrap();
        let o = galois_orbit(&w).unwrap();
        assert!(o.restricted.is_some());
        assert_eq!((o.e, o.residues.clone(), o.degree()), (1, vec![1, 11], 2));

        let z7 = RadicalPoint::root_of_unity(Angle::new(1, 7));
        assert_eq!(galois_orbit(&z7).unwrap().degree(), 6);

        let r = RadicalPoint::new(rat(1, 24), 5, Angle::ZERO).unwrap();
        let o = galois_orbit(&r).unwrap();
        assert_eq!(o.degree(), 5);
        assert_eq!(o.lead(), BigUint::from(24u32));

        // sqrt(2) e(1/8) = 1 + i has degree 2
        let p = RadicalPoint::new(rat_int(2), 2, Angle::new(1, 8)).unwrap();
        assert_eq!(galois_orbit(&p).unwrap().degree(), 2);
    }
}
