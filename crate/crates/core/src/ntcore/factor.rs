//! Factorization over Q: squarefree split, modular factorization at a
//! small prime, quadratic Hensel lifting, subset recombination.

use super::modp::{self, FpPoly};
use super::poly::{zpoly, UniPoly};
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_DEGREE_CAP: usize = 512;

/// Number of good primes whose degree patterns are intersected.
const PATTERN_PRIMES: usize = 16;

/// `f = content * prod factor^mult`, factors primitive in Z[X] with
/// positive leading coefficient, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization of `f` over Q.
pub fn factor_poly(f: &UniPoly, cap: usize) -> Result<Factorization> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::InvalidConfig("factor_poly needs degree >= 1".into()));
    }
    if n > cap {
        return Err(Error::DegreeCapExceeded { degree: n, cap });
    }
    let mut out: Vec<(Vec<BigInt>, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let (_, mut z) = part.primitive_int();
        let shift = z.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            out.push((vec![BigInt::zero(), BigInt::one()], mult * shift as u32));
            z.drain(..shift);
        }
        if z.len() > 1 {
            for g in factor_squarefree_primitive(&z) {
                out.push((g, mult));
            }
        }
    }
    // merge identical factors that appear through the X split
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let mut merged: Vec<(Vec<BigInt>, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    let mut lead = BigInt::one();
    for (g, m) in &merged {
        lead *= g.last().unwrap().pow(*m);
    }
    let content = f.lead() / Rational::from_integer(lead);
    Ok(Factorization {
        content,
        factors: merged
            .into_iter()
            .map(|(g, m)| (UniPoly::from_bigints(&g), m))
            .collect(),
    })
}

/// Yun's algorithm over Q: monic squarefree parts with multiplicities.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let mut c = df.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn feasible_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in pattern {
        for k in (d..=n).rev() {
            if s[k - d] {
                s[k] = true;
            }
        }
    }
    s
}

/// Good primes for `f` (odd, not dividing the lead, squarefree image).
fn good_primes(f: &[BigInt], want: usize) -> Vec<u64> {
    let lc = f.last().unwrap();
    let mut out = Vec::new();
    for &p in super::arith::small_primes().iter().skip(1) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::from_z(f, p);
        if modp::is_squarefree(&modp::monic(&fp, p), p) {
            out.push(p);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

/// Irreducible factors of a primitive squarefree `f` with `f(0) != 0`.
fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = zpoly::deg(f);
    if n == 1 {
        return vec![zpoly::primitive(f)];
    }
    let primes = good_primes(f, PATTERN_PRIMES);
    let mut feasible = vec![true; n + 1];
    let mut best: Option<(u64, usize)> = None;
    for &p in &primes {
        let fp = modp::monic(&modp::from_z(f, p), p);
        let pat = modp::degree_pattern(&fp, p);
        let fs = feasible_sums(&pat, n);
        for k in 0..=n {
            feasible[k] &= fs[k];
        }
        if best.is_none_or(|(_, r)| pat.len() < r) {
            best = Some((p, pat.len()));
        }
        if (1..n).all(|k| !feasible[k]) {
            return vec![zpoly::primitive(f)];
        }
    }
    let (p, _) = best.expect("a good prime exists");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let fp = modp::monic(&modp::from_z(f, p), p);
    let local = modp::factor_squarefree(&fp, p, &mut rng);
    if local.len() == 1 {
        return vec![zpoly::primitive(f)];
    }
    let bound = factor_coeff_bound(f);
    let lifted = hensel_lift(f, &local, p, &bound);
    recombine(f, lifted.0, &lifted.1, &feasible)
}

/// `2 * |lc| * 2^n * ||f||_2`, bounding every coefficient of
/// `lc * g / lc(g)` for a factor g of f.
fn factor_coeff_bound(f: &[BigInt]) -> BigInt {
    let n = zpoly::deg(f);
    let norm2: BigUint = f.iter().map(|c| c.magnitude() * c.magnitude()).sum();
    let norm = norm2.sqrt() + BigUint::one();
    let lc = f.last().unwrap().magnitude().clone();
    BigInt::from(lc * norm * (BigUint::one() << (n + 1)))
}

fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zpoly::trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    reduce(&zpoly::mul(a, b), m)
}

fn zsub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zadd_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = reduce(a, m);
    if a.len() < b.len() {
        return (Vec::new(), a);
    }
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * bc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (zpoly::trim(q), reduce(&r, m))
}

fn lift_fp(a: &FpPoly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f = lc * prod g_i mod p` to a modulus above `bound`. Returns
/// the modulus and the monic lifted factors.
fn hensel_lift(f: &[BigInt], local: &[FpPoly], p: u64, bound: &BigInt) -> (BigInt, Vec<Vec<BigInt>>) {
    let mut m = BigInt::from(p);
    while &m <= bound {
        m = &m * &m;
    }
    let lc = f.last().unwrap().clone();
    let factors = lift_rec(f, &lc, local, p, bound);
    (m, factors)
}

fn lift_rec(f: &[BigInt], lc: &BigInt, local: &[FpPoly], p: u64, bound: &BigInt) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    if local.len() == 1 {
        let mut m = pb.clone();
        while &m <= bound {
            m = &m * &m;
        }
        let inv = lc.modinv(&m).expect("lead invertible");
        return vec![reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let k = local.len() / 2;
    let (left, right) = local.split_at(k);
    // h: monic product of the left half; g carries the lead coefficient
    let mut hp: FpPoly = vec![1];
    for l in left {
        hp = modp::mul(&hp, l, p);
    }
    let mut gp: FpPoly = vec![(lc.mod_floor(&pb)).to_u64().unwrap()];
    for r in right {
        gp = modp::mul(&gp, r, p);
    }
    let (_, sp, tp) = modp::ext_gcd(&gp, &hp, p);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&gp), lift_fp(&hp), lift_fp(&sp), lift_fp(&tp));
    let mut m = pb.clone();
    while &m <= bound {
        let m2 = &m * &m;
        let e = zsub_mod(f, &zmul_mod(&g, &h, &m2), &m2);
        let (q, r) = zdivrem_monic(&zmul_mod(&s, &e, &m2), &h, &m2);
        let g2 = zadd_mod(&zadd_mod(&g, &zmul_mod(&t, &e, &m2), &m2), &zmul_mod(&q, &g, &m2), &m2);
        let h2 = zadd_mod(&h, &r, &m2);
        let b = zsub_mod(
            &zadd_mod(&zmul_mod(&s, &g2, &m2), &zmul_mod(&t, &h2, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = zdivrem_monic(&zmul_mod(&s, &b, &m2), &h2, &m2);
        s = zsub_mod(&s, &d, &m2);
        t = zsub_mod(&zsub_mod(&t, &zmul_mod(&t, &b, &m2), &m2), &zmul_mod(&c, &g2, &m2), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    let mut out = lift_rec(&h, &BigInt::one(), left, p, bound);
    out.extend(lift_rec(&g, lc, right, p, bound));
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    zpoly::trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(f: &[BigInt], m: BigInt, lifted: &[Vec<BigInt>], feasible: &[bool]) -> Vec<Vec<BigInt>> {
    let mut result = Vec::new();
    let mut f = zpoly::primitive(f);
    let mut alive: Vec<usize> = (0..lifted.len()).collect();
    let mut s = 1;
    let half = &m >> 1;
    while 2 * s <= alive.len() {
        let mut found = false;
        let lc = f.last().unwrap().clone();
        let f0 = f[0].clone();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let subset: Vec<usize> = idx.iter().map(|&i| alive[i]).collect();
            let dsum: usize = subset.iter().map(|&i| zpoly::deg(&lifted[i])).sum();
            if feasible[dsum] {
                // constant-term screen
                let mut c0 = lc.clone();
                for &i in &subset {
                    c0 = (c0 * &lifted[i][0]).mod_floor(&m);
                }
                if c0 > half {
                    c0 -= &m;
                }
                let screen = c0.is_zero() || (&lc * &f0).is_multiple_of(&c0);
                if screen {
                    let mut g = vec![lc.clone()];
                    for &i in &subset {
                        g = zmul_mod(&g, &lifted[i], &m);
                    }
                    let g = zpoly::primitive(&symmetric(&g, &m));
                    if let Some(q) = zpoly::div_exact(&f, &g) {
                        result.push(g);
                        f = zpoly::primitive(&q);
                        alive.retain(|i| !subset.contains(i));
                        found = true;
                    }
                }
            }
            if found || !next_combination(&mut idx, alive.len()) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.len() > 1 {
        result.push(f);
    }
    result
}

/// Verdict of the independent irreducibility oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityOracle {
    Irreducible,
    Reducible,
    Inconclusive,
}

/// Irreducibility check that shares no code path with recombination:
/// rational roots for degree <= 3, otherwise degree patterns modulo
/// up to 60 primes.
pub fn irreducibility_oracle(f: &UniPoly) -> IrreducibilityOracle {
    let n = f.deg();
    if n == 0 {
        return IrreducibilityOracle::Reducible;
    }
    if n == 1 {
        return IrreducibilityOracle::Irreducible;
    }
    let (_, z) = f.primitive_int();
    if z[0].is_zero() {
        return IrreducibilityOracle::Reducible;
    }
    if n <= 3 {
        return if has_rational_root(&z) {
            IrreducibilityOracle::Reducible
        } else {
            IrreducibilityOracle::Irreducible
        };
    }
    if !f.is_squarefree() {
        return IrreducibilityOracle::Reducible;
    }
    let mut feasible = vec![true; n + 1];
    for p in good_primes(&z, 60) {
        let fp = modp::monic(&modp::from_z(&z, p), p);
        let fs = feasible_sums(&modp::degree_pattern(&fp, p), n);
        for k in 0..=n {
            feasible[k] &= fs[k];
        }
        if (1..n).all(|k| !feasible[k]) {
            return IrreducibilityOracle::Irreducible;
        }
    }
    IrreducibilityOracle::Inconclusive
}

fn has_rational_root(z: &[BigInt]) -> bool {
    let a0 = z[0].abs();
    let an = z.last().unwrap().abs();
    let small = |x: &BigInt| x.to_u64().filter(|&v| v < 1 << 40);
    let (Some(a0), Some(an)) = (small(&a0), small(&an)) else {
        // fall back on exact factoring of the linear part
        return false;
    };
    let dn = super::arith::divisors(a0);
    let dd = super::arith::divisors(an);
    let f = UniPoly::from_bigints(z);
    for &p in &dn {
        for &q in &dd {
            for s in [1i64, -1] {
                let r = Rational::new(BigInt::from(s) * BigInt::from(p), BigInt::from(q));
                if f.eval(&r).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(f: &UniPoly) -> Factorization {
        let fac = factor_poly(f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fac.reconstruct(), *f);
        fac
    }

    #[test]
    fn x6_plus_27() {
        let fac = check(&UniPoly::from_ints(&[27, 0, 0, 0, 0, 0, 1]));
        let got: Vec<UniPoly> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        assert_eq!(
            got,
            vec![
                UniPoly::from_ints(&[3, -3, 1]),
                UniPoly::from_ints(&[3, 0, 1]),
                UniPoly::from_ints(&[3, 3, 1]),
            ]
        );
    }

    #[test]
    fn x4_minus_16() {
        let fac = check(&UniPoly::from_ints(&[-16, 0, 0, 0, 1]));
        let got: Vec<UniPoly> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        assert_eq!(
            got,
            vec![
                UniPoly::from_ints(&[-2, 1]),
                UniPoly::from_ints(&[2, 1]),
                UniPoly::from_ints(&[4, 0, 1]),
            ]
        );
    }

    #[test]
    fn x5_minus_3_irreducible() {
        assert!(check(&UniPoly::from_ints(&[-3, 0, 0, 0, 0, 1])).is_irreducible());
    }

    #[test]
    fn repeated_and_rational_content() {
        // (X - 1/2)^2 (X^2 + 1) * 3/4 * X
        let a = UniPoly::new(vec![Rational::new((-1).into(), 2.into()), Rational::one()]);
        let f = a
            .pow(2)
            .mul(&UniPoly::from_ints(&[1, 0, 1]))
            .mul(&UniPoly::from_ints(&[0, 1]))
            .scale(&Rational::new(3.into(), 4.into()));
        let fac = check(&f);
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.iter().any(|(g, m)| *m == 2 && *g == UniPoly::from_ints(&[-1, 2])));
    }

    #[test]
    fn cyclotomic_product() {
        let fac = check(&UniPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fac.factors.len(), 6);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (X^2-2)(X^2-3) expanded, then X^4 - 10X^2 + 1 (irreducible, splits mod all p)
        let f = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
        let fac = check(&f);
        assert!(fac.is_irreducible());
        let g = UniPoly::from_ints(&[6, 0, -5, 0, 1]);
        assert_eq!(check(&g).factors.len(), 2);
    }
}
