//! Collision binomials, Capelli's criterion, and the decomposition of a
//! preperiodic point into `zeta * gamma` with `gamma^M = prod a_i^{m_i} b`.

use crate::error::{Error, Result};
use crate::ntcore::cyclotomic::{max_power_exponent, rational_root};
use crate::ntcore::rational::{rat_pow, serde_rational, Rational};
use crate::ntcore::{euler_phi, height_rational, PrimeFactorization};
use crate::semigroup::{ExponentComposite, RadicalPoint, Semigroup, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `X^N - a` with `a = prod a_i^{k_i}` and `N > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionBinomial {
    pub n: u64,
    pub k: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub a: Rational,
}

impl CollisionBinomial {
    pub fn factorization(&self, g: &Semigroup) -> PrimeFactorization {
        let mut acc = PrimeFactorization { sign: 1, exponents: vec![] };
        for (i, &k) in self.k.iter().enumerate() {
            acc = acc.combine(1, g.factorization(i), k);
        }
        acc
    }
}

/// `f_w(alpha) = f_{w[..m]}(alpha)` rewritten as `alpha^N = a`.
pub fn collision_binomial(g: &Semigroup, w: &Word, m: usize) -> Result<CollisionBinomial> {
    if m >= w.len() {
        return Err(Error::InvalidConfig(format!("prefix length {m} must be below word length {}", w.len())));
    }
    let full = ExponentComposite::of_word(g, w)?;
    let pre = ExponentComposite::of_word(g, &w.prefix(m))?;
    collision_from_composites(g, &full, &pre)
}

pub(crate) fn collision_from_composites(
    g: &Semigroup,
    full: &ExponentComposite,
    pre: &ExponentComposite,
) -> Result<CollisionBinomial> {
    // A_n x^{D_n} = A_m x^{D_m}  =>  x^{D_n - D_m} = A_m / A_n
    let n = full.d - pre.d;
    if n == 0 {
        return Err(Error::DegenerateCollision);
    }
    let sign: i128 = if n > 0 { 1 } else { -1 };
    let overflow = || Error::OverflowGuard { steps: 0, partial: f64::NAN };
    let k = pre
        .k
        .iter()
        .zip(&full.k)
        .map(|(p, f)| i64::try_from(sign * (p - f)).map_err(|_| overflow()))
        .collect::<Result<Vec<_>>>()?;
    let n = u64::try_from(n.abs()).map_err(|_| overflow())?;
    let mut acc = PrimeFactorization { sign: 1, exponents: vec![] };
    for (i, &ki) in k.iter().enumerate() {
        acc = acc.combine(1, g.factorization(i), ki);
    }
    Ok(CollisionBinomial { n, k, a: acc.to_rational() })
}

/// Outcome of Capelli's test for `X^M - c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Capelli {
    Irreducible,
    /// `c = y^p` for a prime `p | M`.
    SplitPrime {
        p: u64,
        #[serde(with = "serde_rational")]
        y: Rational,
    },
    /// `4 | M` and `c = -4 y^4`.
    QuarticCase {
        #[serde(with = "serde_rational")]
        y: Rational,
    },
}

pub fn capelli_reducible(m: u64, c: &Rational) -> Result<Capelli> {
    if c.is_zero() {
        return Err(Error::ZeroInput);
    }
    if c.abs().is_one() {
        return Err(Error::RootOfUnityInput);
    }
    for (p, _) in crate::ntcore::arith::factor_u64(m) {
        if p > u32::MAX as u64 {
            continue;
        }
        if let Some(y) = rational_root(c, p as u32) {
            return Ok(Capelli::SplitPrime { p, y });
        }
    }
    if m.is_multiple_of(4) && c.is_negative() {
        if let Some(y) = rational_root(&(-c / Rational::from_integer(4.into())), 4) {
            return Ok(Capelli::QuarticCase { y });
        }
    }
    Ok(Capelli::Irreducible)
}

/// `alpha = zeta gamma` with `gamma^M = prod a_i^{m_i} * b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuredPreper {
    pub ell: u32,
    pub u: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub m_exp: Vec<i64>,
    pub ell_exp: Vec<i64>,
    /// Rational root of `X^u - prod a_i^{ell_i}`; absent when none exists.
    #[serde(with = "opt_rational")]
    pub b: Option<Rational>,
    /// `gamma^M` (up to sign when `b` is absent).
    #[serde(with = "serde_rational")]
    pub gamma_power: Rational,
    #[serde(rename = "Q")]
    pub q: u64,
    pub branch: u64,
    pub root_of_unity: bool,
}

mod opt_rational {
    use super::Rational;
    use serde::Serializer;
    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

impl StructuredPreper {
    /// `h(b) <= sum_i h(a_i)`, compared exactly as `H(b) <= prod H(a_i)`.
    pub fn b_height_certified(&self, g: &Semigroup) -> bool {
        let Some(b) = &self.b else { return false };
        let big = |r: &Rational| {
            let n = r.numer().magnitude().clone();
            let d = r.denom().magnitude().clone();
            n.max(d)
        };
        let rhs = g.generators().iter().fold(num_bigint::BigUint::one(), |acc, f| acc * big(&f.a));
        big(b) <= rhs
    }

    pub fn b_height(&self) -> Option<f64> {
        self.b.as_ref().map(height_rational)
    }
}

/// Decompose the collision data of a point. `point` fixes the branch
/// and root-of-unity order.
pub fn structure_decompose(cb: &CollisionBinomial, g: &Semigroup, point: &RadicalPoint) -> Result<StructuredPreper> {
    let q = point.q();
    let branch = (point.t().num as u128 * point.m() as u128 / point.t().den as u128) as u64;
    if cb.a.abs().is_one() {
        return Ok(StructuredPreper {
            ell: 0,
            u: cb.n,
            m: 1,
            m_exp: vec![0; cb.k.len()],
            ell_exp: cb.k.clone(),
            b: Some(Rational::one()),
            gamma_power: Rational::one(),
            q,
            branch: 0,
            root_of_unity: true,
        });
    }
    let (ell, x, xi) = max_power_exponent(&cb.a)?;
    let u = cb.n.gcd(&(ell as u64));
    let m = cb.n / u;
    let ui = u as i64;
    let m_exp: Vec<i64> = cb.k.iter().map(|k| k.div_euclid(ui)).collect();
    let ell_exp: Vec<i64> = cb.k.iter().map(|k| k.rem_euclid(ui)).collect();
    let mut prod_m = Rational::one();
    for (f, &mi) in g.generators().iter().zip(&m_exp) {
        prod_m *= rat_pow(&f.a, mi);
    }
    // a = xi x^ell and prod a_i^{ell_i} = xi b0^u with b0 = x^{ell/u} / prod a_i^{m_i}
    let b0 = rat_pow(&x, (ell as u64 / u) as i64) / &prod_m;
    let b = if xi > 0 {
        Some(b0.clone())
    } else if u % 2 == 1 {
        Some(-b0.clone())
    } else {
        None
    };
    let gamma_power = match &b {
        Some(b) => &prod_m * b,
        None => &prod_m * &b0,
    };
    Ok(StructuredPreper {
        ell,
        u,
        m,
        m_exp,
        ell_exp,
        b,
        gamma_power,
        q,
        branch,
        root_of_unity: false,
    })
}

/// Lower bound on `[Q(alpha):Q]` with `w(Q) = 2` and `[Q(zeta):Q] = phi(Q)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeBound {
    #[serde(with = "serde_rational")]
    pub lower: Rational,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "Q")]
    pub q: u64,
    pub w: u64,
    pub phi_q: u64,
}

pub fn degree_lower_bound(sp: &StructuredPreper) -> DegreeBound {
    degree_bound_mq(sp.m, sp.q)
}

/// `max(M/2, max(phi(Q), M/2) / min(phi(Q), M))`.
pub fn degree_bound_mq(m: u64, q: u64) -> DegreeBound {
    let phi = euler_phi(q);
    let half_m = Rational::new(BigInt::from(m), BigInt::from(2));
    let phi_r = Rational::from_integer(BigInt::from(phi));
    let num = if phi_r > half_m { phi_r.clone() } else { half_m.clone() };
    let den = Rational::from_integer(BigInt::from(phi.min(m)));
    let second = num / den;
    let lower = if second > half_m { second } else { half_m };
    DegreeBound { lower, m, q, w: 2, phi_q: phi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};
    use crate::semigroup::Angle;

    #[test]
    fn collisions() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let cb = collision_binomial(&g, &Word(vec![0]), 0).unwrap();
        assert_eq!((cb.n, cb.a.clone()), (1, rat(1, 2)));
        let g1 = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let cb = collision_binomial(&g1, &Word(vec![0, 0]), 1).unwrap();
        assert_eq!((cb.n, cb.a.clone()), (2, rat_int(1)));
        let g2 = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let cb = collision_binomial(&g2, &Word(vec![0, 1]), 0).unwrap();
        assert_eq!((cb.n, cb.a.clone(), cb.k.clone()), (5, rat(1, 24), vec![-3, -1]));
    }

    #[test]
    fn capelli_cases() {
        assert_eq!(capelli_reducible(6, &rat_int(-27)).unwrap(), Capelli::SplitPrime { p: 3, y: rat_int(-3) });
        assert_eq!(capelli_reducible(5, &rat_int(3)).unwrap(), Capelli::Irreducible);
        assert_eq!(capelli_reducible(4, &rat_int(-4)).unwrap(), Capelli::QuarticCase { y: rat_int(1) });
        assert_eq!(capelli_reducible(4, &rat_int(-1)), Err(Error::RootOfUnityInput));
    }

    #[test]
    fn decompositions() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let cb = CollisionBinomial { n: 2, k: vec![4], a: rat_int(16) };
        let p = RadicalPoint::from_rational(&rat_int(4)).unwrap();
        let sp = structure_decompose(&cb, &g, &p).unwrap();
        assert_eq!((sp.ell, sp.u, sp.m), (4, 2, 1));
        assert!(sp.b_height_certified(&g));

        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let cb = collision_binomial(&g, &Word(vec![0, 1]), 0).unwrap();
        let p = RadicalPoint::new(rat(1, 24), 5, Angle::ZERO).unwrap();
        let sp = structure_decompose(&cb, &g, &p).unwrap();
        assert_eq!((sp.ell, sp.u, sp.m), (1, 1, 5));
        assert_eq!(sp.b, Some(rat_int(1)));
        assert_eq!(sp.m_exp, cb.k);

        let cb = CollisionBinomial { n: 2, k: vec![0, 0], a: rat_int(1) };
        let p = RadicalPoint::root_of_unity(Angle::HALF);
        assert!(structure_decompose(&cb, &g, &p).unwrap().root_of_unity);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound_mq(5, 1).lower, rat(5, 2));
        assert_eq!(degree_bound_mq(1, 7).lower, rat_int(6));
        assert_eq!(degree_bound_mq(1, 1).lower, rat_int(1));
    }
}
