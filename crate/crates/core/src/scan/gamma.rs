//! The sum `Gamma = (1/deg) sum_v sum_sigma log |sigma(alpha) - beta|_v`
//! and its split over S.

use super::integrality::{meeting_norm, norm_is_s_unit};
use crate::error::{Error, Result};
use crate::ntcore::arith::{factor_biguint, ln_biguint, ord_p_bigint, strip_prime, IntFactorization};
use crate::ntcore::rational::{ord_p, rat_to_f64, Rational};
use crate::ntcore::Place;
use crate::preper::orbit::GaloisOrbit;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Pollard-Brent budget for splitting the norm.
pub const GAMMA_FACTOR_BUDGET: u64 = 1 << 10;

/// `N = prod_sigma (sigma(alpha) - beta)` as `F_h(r, s) / (L s^deg)` up
/// to sign, with per-prime bookkeeping of the product formula. Primes
/// left in the unsplit cofactor are carried as one lumped term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaCertificate {
    /// `(p, ord_p N)`.
    pub rows: Vec<(u64, i64)>,
    /// Unsplit parts of numerator and denominator of N.
    pub cofactor_num: String,
    pub cofactor_den: String,
    /// `log|N|_inf = sum ord_p(N) log p + log(cofactor ratio)` holds as an
    /// identity of integers, so the place sum is zero.
    pub exact_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaRow {
    /// "inf", a prime, or "cofactor".
    pub place: String,
    /// `(1/deg) sum_sigma log |sigma(alpha) - beta|_v`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSum {
    pub degree: u64,
    pub certificate: GammaCertificate,
    pub table: Vec<GammaRow>,
    pub residual: f64,
}

/// `(1/deg) sum_sigma log |sigma(alpha) - beta|` from explicit conjugates.
pub fn archimedean_term(orbit: &GaloisOrbit, beta: &Rational) -> f64 {
    let b = rat_to_f64(beta);
    let zs = orbit.complex_conjugates();
    zs.iter().map(|z| (z - b).norm().ln()).sum::<f64>() / zs.len() as f64
}

pub fn gamma_sum(orbit: &GaloisOrbit, beta: &Rational) -> Result<GammaSum> {
    let f = meeting_norm(orbit, beta)?;
    let fac = factor_biguint(f.magnitude(), GAMMA_FACTOR_BUDGET);
    gamma_sum_with_norm(orbit, beta, &f, &fac)
}

/// As [`gamma_sum`], reusing a (possibly partial) factorization of
/// `F_h(r, s)`.
pub fn gamma_sum_with_norm(orbit: &GaloisOrbit, beta: &Rational, f: &BigInt, fac: &IntFactorization) -> Result<GammaSum> {
    if f.is_zero() {
        return Err(Error::BetaIsConjugate);
    }
    let deg = orbit.degree();
    let lead = BigInt::from(orbit.lead());
    let s = beta.denom();
    // primes of L and s are small and already known; move any of them
    // out of the cofactor so it is coprime to L s^deg
    let mut extra: BTreeSet<u64> = BTreeSet::new();
    for x in [&lead, s] {
        let xf = factor_biguint(x.magnitude(), crate::ntcore::rational::FACTOR_BUDGET);
        extra.extend(xf.primes.iter().map(|&(p, _)| p));
    }
    let mut cof = fac.cofactor.clone();
    let mut ords: BTreeMap<u64, i64> = fac.primes.iter().map(|&(p, e)| (p, e as i64)).collect();
    for &p in &extra {
        let k = strip_prime(&mut cof, p) as i64;
        *ords.entry(p).or_insert(0) += k;
    }
    let d = deg as i64;
    let rows: Vec<(u64, i64)> = ords
        .iter()
        .map(|(&p, &e)| (p, e - ord_p_bigint(&lead, p) as i64 - d * ord_p_bigint(s, p) as i64))
        .filter(|&(_, e)| e != 0)
        .collect();

    // rebuild |N| from the rows and the cofactor
    let mut num = cof.clone();
    let mut den = BigUint::one();
    for &(p, e) in &rows {
        let pp = BigUint::from(p).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num *= pp;
        } else {
            den *= pp;
        }
    }
    let norm = Rational::new(f.clone(), lead * s.pow(deg as u32));
    let exact_zero = norm.numer().magnitude() == &num && norm.denom().magnitude() == &den;
    let certificate = GammaCertificate {
        rows: rows.clone(),
        cofactor_num: cof.to_string(),
        cofactor_den: "1".into(),
        exact_zero,
    };

    let dd = deg as f64;
    let mut table = vec![GammaRow { place: "inf".into(), value: archimedean_term(orbit, beta) }];
    for &(p, e) in &rows {
        table.push(GammaRow { place: p.to_string(), value: -(e as f64) * (p as f64).ln() / dd });
    }
    if !cof.is_one() {
        table.push(GammaRow { place: "cofactor".into(), value: -ln_biguint(&cof) / dd });
    }
    let residual = table.iter().map(|r| r.value).sum::<f64>().abs();
    Ok(GammaSum { degree: deg, certificate, table, residual })
}

/// Both halves of `0 = Gamma` for an S-integral alpha.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaDecomposition {
    /// `sum_{v in S} (1/deg) sum_sigma log |sigma(alpha) - beta|_v`.
    pub s_part: f64,
    /// `sum_{v not in S} log max(|alpha|_v, |beta|_v)`.
    pub non_s_part: f64,
    /// `(p, c)` with the non-S part equal to `sum c log p`.
    pub non_s_exact: Vec<(u64, String)>,
    pub residual: f64,
    /// `sum_v log max(|alpha|_v, |beta|_v)` over all places.
    pub height_witness: f64,
}

fn support(orbit: &GaloisOrbit, beta: &Rational) -> BTreeSet<u64> {
    let c = orbit.point.c();
    let mut ps = BTreeSet::new();
    for x in [c.numer(), c.denom(), beta.numer(), beta.denom()] {
        let f = factor_biguint(x.magnitude(), crate::ntcore::rational::FACTOR_BUDGET);
        ps.extend(f.primes.iter().map(|&(p, _)| p));
    }
    ps
}

/// `-min(ord_p alpha, ord_p beta)`, the coefficient of `log p` in
/// `log max(|alpha|_p, |beta|_p)`.
fn log_max_coeff(orbit: &GaloisOrbit, beta: &Rational, p: u64) -> Rational {
    let va = orbit.point.ord(p);
    if beta.is_zero() {
        return -va;
    }
    let vb = Rational::from_integer(ord_p(beta, p).into());
    -(va.min(vb))
}

pub fn gamma_decomposition(orbit: &GaloisOrbit, beta: &Rational, s: &[Place]) -> Result<GammaDecomposition> {
    let f = meeting_norm(orbit, beta)?;
    gamma_decomposition_with_norm(orbit, beta, s, &f)
}

pub fn gamma_decomposition_with_norm(
    orbit: &GaloisOrbit,
    beta: &Rational,
    s: &[Place],
    f: &BigInt,
) -> Result<GammaDecomposition> {
    if !norm_is_s_unit(f, s) {
        return Err(Error::NotSIntegral);
    }
    let d = orbit.degree() as f64;
    let in_s = |p: u64| s.contains(&Place::Finite(p));
    let mut s_part = if s.contains(&Place::Infinite) { archimedean_term(orbit, beta) } else { 0.0 };
    let lead = BigInt::from(orbit.lead());
    let deg = orbit.degree() as i64;
    for v in s {
        if let Place::Finite(p) = *v {
            let e = ord_p_bigint(f, p) as i64 - ord_p_bigint(&lead, p) as i64 - deg * ord_p_bigint(beta.denom(), p) as i64;
            s_part += -(e as f64) * (p as f64).ln() / d;
        }
    }
    let mut non_s_exact = Vec::new();
    let mut non_s_part = 0.0;
    let mut height_witness = {
        let la = orbit.ln_gamma();
        if beta.is_zero() {
            la
        } else {
            la.max(crate::ntcore::rational::ln_abs_rational(beta))
        }
    };
    for p in support(orbit, beta) {
        let c = log_max_coeff(orbit, beta, p);
        let val = rat_to_f64(&c) * (p as f64).ln();
        height_witness += val;
        if !in_s(p) && !c.is_zero() {
            non_s_part += val;
            non_s_exact.push((p, c.to_string()));
        }
    }
    Ok(GammaDecomposition { s_part, non_s_part, non_s_exact, residual: (s_part + non_s_part).abs(), height_witness })
}
