//! Polynomials over F_p for a word-sized prime p: arithmetic, distinct
//! degree and equal degree factorization.

use super::arith::{inv_mod, mul_mod};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub type FpPoly = Vec<u64>;

pub fn trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn from_z(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r < BigInt::zero() { r + &pb } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
    )
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn scale(a: &[u64], k: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&c| mul_mod(c, k, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x as u128 * y as u128) % pp;
        }
    }
    trim(v.into_iter().map(|c| c as u64).collect())
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p).expect("nonzero lead"), p),
    }
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p).expect("invertible lead");
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, bc, p)) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv_mod(*r0.last().unwrap(), p).unwrap();
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &[u64], p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `b^e mod m`.
pub fn pow_mod_poly(b: &[u64], e: &BigUint, m: &[u64], p: u64) -> FpPoly {
    let mut r: FpPoly = vec![1];
    let base = rem(b, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &base, p), m, p);
        }
    }
    r
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && gcd(f, &d, p).len() == 1
}

/// Distinct degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn ddf(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f.clone(), deg));
            break;
        }
        h = pow_mod_poly(&h, &pb, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Split a product of irreducibles all of degree `d` (odd p).
pub fn edf<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = gcd(f, &a, p);
        let split = if g.len() > 1 && g.len() < f.len() {
            Some(g)
        } else {
            let b = pow_mod_poly(&a, &e, f, p);
            let g = gcd(f, &sub(&b, &[1], p), p);
            (g.len() > 1 && g.len() < f.len()).then_some(g)
        };
        if let Some(g) = split {
            let h = divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

/// Degrees of the irreducible factors, from the distinct degree split.
pub fn degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
    let mut v = Vec::new();
    for (g, d) in ddf(f, p) {
        for _ in 0..(g.len() - 1) / d {
            v.push(d);
        }
    }
    v
}
