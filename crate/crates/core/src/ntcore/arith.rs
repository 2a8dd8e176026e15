//! Machine-word and big-integer number theory: primality, factoring,
//! perfect powers, modular helpers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `n` by a plain sieve.
pub fn primes_below(n: usize) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

const TRIAL_LIMIT: usize = 1 << 16;

pub fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_below(TRIAL_LIMIT))
}

fn pollard_brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, m) = (2u64, 128u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Complete factorization of a 64-bit integer, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes().iter().take(200) {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut big = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            big.push(m);
            continue;
        }
        let d = pollard_brent_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    big.sort_unstable();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Prime factorization of a big integer. `cofactor` is the part left
/// unsplit (1 when the factorization is complete).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub primes: Vec<(u64, u32)>,
    pub cofactor: BigUint,
}

impl IntFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    for c in 1u32..4 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigUint::one();
        let mut q = BigUint::one();
        let (mut r, m) = (1u64, 64u64);
        let mut spent = 0u64;
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

/// Factor `n` by trial division, then Pollard-Brent within `budget`
/// iterations per split. Prime factors above 2^64 stay in the cofactor.
pub fn factor_biguint(n: &BigUint, budget: u64) -> IntFactorization {
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return IntFactorization { primes, cofactor: rest };
    }
    let tz = rest.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        primes.push((2, tz as u32));
        rest >>= tz;
    }
    for &p in small_primes().iter().skip(1) {
        if rest.is_one() {
            break;
        }
        if let Some(v) = rest.to_u64() {
            if p * p > v {
                break;
            }
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
    }
    let mut cofactor = BigUint::one();
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(v) = m.to_u64() {
            primes.extend(factor_u64(v));
            continue;
        }
        if is_probable_prime_big(&m) {
            cofactor *= m;
            continue;
        }
        match pollard_brent_big(&m, budget) {
            Some(d) => {
                let o = &m / &d;
                stack.push(d);
                stack.push(o);
            }
            None => cofactor *= m,
        }
    }
    primes.sort_unstable();
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    IntFactorization {
        primes: merged,
        cofactor,
    }
}

/// Largest `k` with `n = r^k`, together with `r`. For `n <= 1` returns
/// `(n, 1)`.
pub fn perfect_power(n: &BigUint) -> (BigUint, u32) {
    let mut root = n.clone();
    let mut exp = 1u32;
    if n <= &BigUint::one() {
        return (root, exp);
    }
    let mut p_idx = 0;
    let primes = small_primes();
    loop {
        let bits = root.bits();
        let p = primes[p_idx];
        if p >= bits.max(2) {
            break;
        }
        let r = root.nth_root(p as u32);
        if r.pow(p as u32) == root {
            root = r;
            exp *= p as u32;
        } else {
            p_idx += 1;
        }
    }
    (root, exp)
}

/// Remove every factor `p` from `n`, returning the exponent.
pub fn strip_prime(n: &mut BigUint, p: u64) -> u32 {
    let mut e = 0;
    if n.is_zero() {
        return 0;
    }
    let pb = BigUint::from(p);
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return e;
        }
        *n = q;
        e += 1;
    }
}

pub fn ord_p_bigint(n: &BigInt, p: u64) -> u32 {
    let mut m = n.magnitude().clone();
    strip_prime(&mut m, p)
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi needs odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (D/u) for a fundamental discriminant D and u > 0
/// coprime to D.
pub fn kronecker(d: i64, u: u64) -> i32 {
    let tz = u.trailing_zeros();
    let odd = u >> tz;
    let mut s = jacobi(d, odd);
    if tz > 0 {
        let r = d.rem_euclid(8);
        let k2 = match r {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
        if tz % 2 == 1 {
            s *= k2;
        }
    }
    s
}

/// Natural log of a positive big integer.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let ps = primes_below(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), ps.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn factor_reconstructs() {
        for n in [1u64, 2, 12, 997 * 991, 600851475143, u64::MAX, 18446744073709551557] {
            let f = factor_u64(n);
            let prod: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(prod, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn big_factoring() {
        let n = BigUint::from(18446744073709551557u64) * BigUint::from(4294967291u64) * 360u32;
        let f = factor_biguint(&n, 1 << 20);
        assert_eq!(f.primes, vec![(2, 3), (3, 2), (5, 1), (4294967291, 1), (18446744073709551557, 1)]);
        assert!(f.is_complete());
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&BigUint::from(64u32)), (BigUint::from(2u32), 6));
        assert_eq!(perfect_power(&BigUint::from(12u32)), (BigUint::from(12u32), 1));
        assert_eq!(perfect_power(&BigUint::from(3u32).pow(35)), (BigUint::from(3u32), 35));
    }

    #[test]
    fn phi_and_mu() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn kronecker_symbols() {
        assert_eq!(kronecker(12, 5), -1);
        assert_eq!(kronecker(12, 7), -1);
        assert_eq!(kronecker(12, 11), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
    }
}
