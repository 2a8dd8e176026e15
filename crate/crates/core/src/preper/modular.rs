//! Multi-modular evaluation over primes `l = 1 mod n`, where `Z[zeta_n]`
//! maps onto `F_l`. Used for norms `F_h(r, s)` and minimal polynomial
//! coefficients without floating point.

use super::orbit::GaloisOrbit;
use crate::error::{Error, Result};
use crate::ntcore::arith::{factor_u64, inv_mod, is_prime_u64, jacobi, mul_mod, pow_mod};
use crate::ntcore::rational::Rational;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const PRIME_CEILING: u64 = 1 << 62;

/// A prime `l = 1 mod n` with the powers of a primitive n-th root.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    pub l: u64,
    pub zeta: Vec<u64>,
}

impl PrimeContext {
    pub fn zeta_pow(&self, y: u64) -> u64 {
        self.zeta[(y % self.zeta.len() as u64) as usize]
    }
}

/// Iterator over `l = k n + 1` prime, descending from `2^62`.
pub struct PrimeStream {
    n: u64,
    k: u64,
    qs: Vec<u64>,
}

impl PrimeStream {
    pub fn new(n: u64) -> Self {
        let qs = factor_u64(n).into_iter().map(|(q, _)| q).collect();
        PrimeStream { n, k: (PRIME_CEILING - 1) / n, qs }
    }
}

impl Iterator for PrimeStream {
    type Item = PrimeContext;
    fn next(&mut self) -> Option<PrimeContext> {
        while self.k > 0 {
            let l = self.k * self.n + 1;
            self.k -= 1;
            if !is_prime_u64(l) {
                continue;
            }
            let w = (2..l).map(|h| pow_mod(h, (l - 1) / self.n, l)).find(|&w| {
                self.qs.iter().all(|&q| pow_mod(w, self.n / q, l) != 1)
            })?;
            let mut zeta = Vec::with_capacity(self.n as usize);
            let mut acc = 1u64;
            for _ in 0..self.n {
                zeta.push(acc);
                acc = mul_mod(acc, w, l);
            }
            return Some(PrimeContext { l, zeta });
        }
        None
    }
}

fn mod_big(x: &BigUint, l: u64) -> u64 {
    (x % l).to_u64().expect("residue fits")
}

fn mod_bigint(x: &BigInt, l: u64) -> u64 {
    let r = mod_big(x.magnitude(), l);
    if x.sign() == Sign::Minus && r != 0 {
        l - r
    } else {
        r
    }
}

fn mod_rational(x: &Rational, l: u64) -> Option<u64> {
    let d = mod_bigint(x.denom(), l);
    Some(mul_mod(mod_bigint(x.numer(), l), inv_mod(d, l)?, l))
}

/// Image of `sqrt(p)` (positive real root) for a prime `p` with
/// `sqrt(p)` expressible in `Q(zeta_n)`; `i` must be available when
/// `p = 3 mod 4` unless the caller pairs such primes.
fn sqrt_prime_image(p: u64, ctx: &PrimeContext, n: u64) -> Option<u64> {
    let l = ctx.l;
    if p == 2 {
        if !n.is_multiple_of(8) {
            return None;
        }
        return Some((ctx.zeta_pow(n / 8) + ctx.zeta_pow(7 * n / 8)) % l);
    }
    if !n.is_multiple_of(p) {
        return None;
    }
    // Gauss sum G_p = sum (a/p) zeta_p^a, equal to sqrt(p*)
    let mut g = 0u64;
    for a in 1..p {
        let z = ctx.zeta_pow(a * (n / p));
        g = if jacobi(a as i64, p) > 0 { (g + z) % l } else { (g + l - z) % l };
    }
    if p % 4 == 1 {
        Some(g)
    } else if n.is_multiple_of(4) {
        // sqrt(p) = -i G_p
        let i = ctx.zeta_pow(n / 4);
        Some((l - mul_mod(i, g, l)) % l)
    } else {
        None
    }
}

/// Image of `kappa` in `F_l` under `zeta_n -> ctx.zeta[1]`.
pub fn kappa_image(orbit: &GaloisOrbit, ctx: &PrimeContext) -> Result<u64> {
    let c = orbit.point.c();
    let l = ctx.l;
    let Some(qd) = &orbit.restricted else {
        return mod_rational(c, l).ok_or(Error::InvariantViolation("prime divides denominator".into()));
    };
    let n = orbit.n;
    // sqrt(c) = k sqrt(d) / den with num * den = k^2 d
    let nd = c.numer().magnitude() * c.denom().magnitude();
    let d: BigUint = qd.d_primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
    let (k2, rem) = nd.div_rem(&d);
    debug_assert!(rem.is_zero());
    let k = k2.sqrt();
    debug_assert_eq!(&k * &k, k2);
    let mut root = 1u64;
    let mut paired = 0u32;
    for &p in &qd.d_primes {
        let img = if p != 2 && p % 4 == 3 && !n.is_multiple_of(4) {
            // pairs of such primes: (-i G_p)(-i G_q) = -G_p G_q
            paired += 1;
            let mut g = 0u64;
            for a in 1..p {
                let z = ctx.zeta_pow(a * (n / p));
                g = if jacobi(a as i64, p) > 0 { (g + z) % l } else { (g + l - z) % l };
            }
            g
        } else {
            sqrt_prime_image(p, ctx, n)
                .ok_or_else(|| Error::InvariantViolation(format!("sqrt({p}) not in the cyclotomic field")))?
        };
        root = mul_mod(root, img, l);
    }
    if paired % 2 == 1 {
        return Err(Error::InvariantViolation("unpaired quadratic prime".into()));
    }
    if (paired / 2) % 2 == 1 {
        root = (l - root) % l;
    }
    let num = mul_mod(mod_big(&k, l), root, l);
    let den = inv_mod(mod_big(c.denom().magnitude(), l), l)
        .ok_or(Error::InvariantViolation("prime divides denominator".into()))?;
    Ok(mul_mod(num, den, l))
}

/// Incremental Chinese remaindering into the symmetric range.
pub struct Crt {
    value: BigInt,
    modulus: BigUint,
}

impl Default for Crt {
    fn default() -> Self {
        Crt { value: BigInt::zero(), modulus: BigUint::one() }
    }
}

impl Crt {
    pub fn push(&mut self, r: u64, l: u64) {
        let cur = mod_bigint(&self.value, l);
        let minv = inv_mod(mod_big(&self.modulus, l), l).expect("distinct primes");
        let t = mul_mod((r + l - cur) % l, minv, l);
        self.value += BigInt::from(self.modulus.clone()) * BigInt::from(t);
        self.modulus *= l;
    }

    pub fn bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn symmetric(&self) -> BigInt {
        let m = BigInt::from(self.modulus.clone());
        let v = self.value.mod_floor(&m);
        if &v * 2 > m {
            v - m
        } else {
            v
        }
    }
}

fn bits_needed(ln_bound: f64) -> u64 {
    (ln_bound / std::f64::consts::LN_2).max(0.0).ceil() as u64 + 66
}

fn lead_mod(orbit: &GaloisOrbit, l: u64) -> u64 {
    let den = orbit.point.c().denom().magnitude();
    if den.is_one() {
        return 1;
    }
    let deg = orbit.degree();
    let m = orbit.point.m();
    let g = deg.gcd(&m);
    let r = den.nth_root((m / g) as u32);
    pow_mod(mod_big(&r, l), deg / g, l)
}

/// Upper bound for `ln |F_h(r, s)|`.
pub fn norm_ln_bound(orbit: &GaloisOrbit, r: &BigInt, s: &BigInt) -> f64 {
    let e = orbit.e as f64;
    let lr = if r.is_zero() { f64::NEG_INFINITY } else { crate::ntcore::arith::ln_biguint(r.magnitude()) };
    let ls = crate::ntcore::arith::ln_biguint(s.magnitude());
    let a = e * lr;
    let b = e * ls + orbit.ln_kappa();
    let per = a.max(b) + std::f64::consts::LN_2;
    super::orbit::ln_lead(orbit) + orbit.residues.len() as f64 * per
}

/// `F_h(r, s) = L prod_rho (r^e - s^e kappa zeta_n^{e x_rho})`, the
/// primitive minimal polynomial of the orbit homogenised at `(r, s)`.
pub fn homogeneous_norm(orbit: &GaloisOrbit, r: &BigInt, s: &BigInt) -> Result<BigInt> {
    let need = bits_needed(norm_ln_bound(orbit, r, s));
    let mut crt = Crt::default();
    let e = orbit.e;
    for ctx in PrimeStream::new(orbit.n) {
        let l = ctx.l;
        if mod_big(orbit.point.c().denom().magnitude(), l) == 0 {
            continue;
        }
        let kappa = kappa_image(orbit, &ctx)?;
        let re = pow_mod(mod_bigint(r, l), e, l);
        let se = pow_mod(mod_bigint(s, l), e, l);
        let sk = mul_mod(se, kappa, l);
        let mut acc = lead_mod(orbit, l);
        for &x in &orbit.residues {
            let z = ctx.zeta_pow(e * x % orbit.n);
            acc = mul_mod(acc, (re + l - mul_mod(sk, z, l)) % l, l);
        }
        crt.push(acc, l);
        if crt.bits() > need {
            return Ok(crt.symmetric());
        }
    }
    Err(Error::InvariantViolation("ran out of evaluation primes".into()))
}

/// Integer coefficients (low to high) of the primitive minimal polynomial
/// `L prod_rho (X^e - kappa zeta_n^{e x_rho})`.
pub fn minpoly_integer_coeffs(orbit: &GaloisOrbit) -> Result<Vec<BigInt>> {
    let r = orbit.residues.len();
    let ln_bound = super::orbit::ln_lead(orbit) + r as f64 * (1.0 + orbit.ln_kappa().exp()).ln();
    let need = bits_needed(ln_bound);
    let mut crts: Vec<Crt> = (0..=r).map(|_| Crt::default()).collect();
    let e = orbit.e;
    for ctx in PrimeStream::new(orbit.n) {
        let l = ctx.l;
        if mod_big(orbit.point.c().denom().magnitude(), l) == 0 {
            continue;
        }
        let kappa = kappa_image(orbit, &ctx)?;
        // prod (Y - beta_rho), low to high
        let mut poly = vec![1u64];
        for &x in &orbit.residues {
            let beta = mul_mod(kappa, ctx.zeta_pow(e * x % orbit.n), l);
            let mut next = vec![0u64; poly.len() + 1];
            for (j, &cj) in poly.iter().enumerate() {
                next[j + 1] = (next[j + 1] + cj) % l;
                next[j] = (next[j] + l - mul_mod(cj, beta, l)) % l;
            }
            poly = next;
        }
        let lead = lead_mod(orbit, l);
        for (j, cj) in poly.iter().enumerate() {
            crts[j].push(mul_mod(*cj, lead, l), l);
        }
        if crts[0].bits() > need {
            let ys: Vec<BigInt> = crts.iter().map(Crt::symmetric).collect();
            let mut out = vec![BigInt::zero(); r * e as usize + 1];
            for (j, y) in ys.into_iter().enumerate() {
                out[j * e as usize] = y;
            }
            return Ok(out);
        }
    }
    Err(Error::InvariantViolation("ran out of evaluation primes".into()))
}

/// `F_h(r, s)` for `beta = r/s` in lowest terms.
pub fn norm_at(orbit: &GaloisOrbit, beta: &Rational) -> Result<BigInt> {
    homogeneous_norm(orbit, beta.numer(), beta.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};
    use crate::preper::orbit::galois_orbit;
    use crate::semigroup::{Angle, RadicalPoint};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_minpolys() {
        let cases: Vec<(RadicalPoint, Vec<i64>)> = vec![
            (RadicalPoint::new(rat_int(3), 2, Angle::new(1, 4)).unwrap(), vec![3, 0, 1]),
            (RadicalPoint::new(rat_int(3), 2, Angle::new(1, 12)).unwrap(), vec![3, -3, 1]),
            (RadicalPoint::root_of_unity(Angle::new(1, 3)), vec![1, 1, 1]),
            (RadicalPoint::new(rat_int(2), 2, Angle::new(1, 8)).unwrap(), vec![2, -2, 1]),
            (RadicalPoint::new(rat(1, 24), 5, Angle::ZERO).unwrap(), vec![-1, 0, 0, 0, 0, 24]),
            (RadicalPoint::from_rational(&rat(-1, 2)).unwrap(), vec![1, 2]),
            (RadicalPoint::new(rat_int(21), 2, Angle::new(1, 42)).unwrap(), vec![]),
        ];
        for (p, want) in cases {
            let o = galois_orbit(&p).unwrap();
            let got = minpoly_integer_coeffs(&o).unwrap();
            if want.is_empty() {
                // sqrt(21) zeta_42: check against the binomial it divides
                let f = crate::ntcore::UniPoly::from_bigints(&got);
                let (mq, cq) = crate::preper::orbit::binomial_of(&p);
                assert!(f.divides(&crate::ntcore::UniPoly::binomial(mq as usize, &cq)));
                continue;
            }
            assert_eq!(got, ints(&want), "{p}");
        }
    }

    #[test]
    fn norms() {
        let i = RadicalPoint::root_of_unity(Angle::new(1, 4));
        let o = galois_orbit(&i).unwrap();
        assert_eq!(norm_at(&o, &rat_int(3)).unwrap(), BigInt::from(10));
        let h = RadicalPoint::from_rational(&rat(1, 2)).unwrap();
        let o = galois_orbit(&h).unwrap();
        assert_eq!(norm_at(&o, &rat_int(3)).unwrap(), BigInt::from(5));
        let z3 = RadicalPoint::root_of_unity(Angle::new(1, 3));
        assert_eq!(norm_at(&galois_orbit(&z3).unwrap(), &rat_int(2)).unwrap(), BigInt::from(7));
        let r = RadicalPoint::new(rat(1, 24), 5, Angle::ZERO).unwrap();
        // 24 * 2^5 - 1
        assert_eq!(norm_at(&galois_orbit(&r).unwrap(), &rat_int(2)).unwrap(), BigInt::from(767));
        assert_eq!(norm_at(&galois_orbit(&r).unwrap(), &rat(5, 2)).unwrap(), BigInt::from(24 * 3125 - 32));
    }
}
