//! Monomial maps `a z^d`, the semigroups they generate, words and their
//! closed-form composites, and the size window `r(G, v)`.

pub mod preperiodic;
pub mod radical;

pub use preperiodic::{is_preperiodic, orbit_tree, Certificate, OrbitNode, PreperStatus, DEFAULT_NODE_CAP};
pub use radical::{Angle, RadicalPoint};

use crate::error::{Error, Result};
use crate::ntcore::rational::{ord_p, rat_pow, serde_rational, Rational};
use crate::ntcore::{factor_rational, height_rational, Place, PrimeFactorization};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// `z -> a z^d` with `a != 0` and `|d| >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct MonomialMap {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    pub d: i64,
}

#[derive(Deserialize)]
struct RawMap {
    #[serde(with = "serde_rational")]
    a: Rational,
    d: i64,
}

impl TryFrom<RawMap> for MonomialMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<Self> {
        MonomialMap::new(r.a, r.d)
    }
}

impl MonomialMap {
    pub fn new(a: Rational, d: i64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidConfig("generator coefficient must be nonzero".into()));
        }
        if d.abs() < 2 {
            return Err(Error::InvalidConfig(format!("generator degree {d} has |d| < 2")));
        }
        Ok(MonomialMap { a, d })
    }

    pub fn apply_rational(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.d < 0 {
            return Err(Error::ZeroInput);
        }
        Ok(&self.a * rat_pow(x, self.d))
    }

    /// Monomials reduce well at p exactly when `a` is a p-unit.
    pub fn good_reduction(&self, p: u64) -> bool {
        ord_p(&self.a, p) == 0
    }
}

pub fn good_reduction(f: &MonomialMap, p: u64) -> bool {
    f.good_reduction(p)
}

/// A finitely generated semigroup of monomial maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSemigroup", into = "RawSemigroup")]
pub struct Semigroup {
    generators: Vec<MonomialMap>,
    factorizations: Vec<PrimeFactorization>,
}

#[derive(Serialize, Deserialize)]
struct RawSemigroup {
    generators: Vec<MonomialMap>,
}

impl TryFrom<RawSemigroup> for Semigroup {
    type Error = Error;
    fn try_from(r: RawSemigroup) -> Result<Self> {
        Semigroup::new(r.generators)
    }
}

impl From<Semigroup> for RawSemigroup {
    fn from(g: Semigroup) -> Self {
        RawSemigroup { generators: g.generators }
    }
}

impl Semigroup {
    pub fn new(generators: Vec<MonomialMap>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidConfig("semigroup needs at least one generator".into()));
        }
        let factorizations = generators
            .iter()
            .map(|g| factor_rational(&g.a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Semigroup { generators, factorizations })
    }

    /// Shorthand for tests and examples: `[(a_num, a_den, d), ...]`.
    pub fn from_triples(gens: &[(i64, i64, i64)]) -> Result<Self> {
        let g = gens
            .iter()
            .map(|&(n, q, d)| {
                if q == 0 {
                    return Err(Error::InvalidConfig("zero denominator".into()));
                }
                MonomialMap::new(Rational::new(n.into(), q.into()), d)
            })
            .collect::<Result<Vec<_>>>()?;
        Semigroup::new(g)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn generators(&self) -> &[MonomialMap] {
        &self.generators
    }

    pub fn s(&self) -> usize {
        self.generators.len()
    }

    pub fn factorization(&self, i: usize) -> &PrimeFactorization {
        &self.factorizations[i]
    }

    /// Primes dividing some `a_i`, ascending.
    pub fn support_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factorizations.iter().flat_map(|f| f.primes()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn height_sum(&self) -> f64 {
        self.generators.iter().map(|g| height_rational(&g.a)).sum()
    }

    pub fn is_power_maps(&self) -> bool {
        self.generators.iter().all(|g| g.a.is_one())
    }
}

/// Generator indices, applied left to right; stored 0-based and printed
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, m: usize) -> Word {
        Word(self.0[..m].to_vec())
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn validate(&self, g: &Semigroup) -> Result<()> {
        match self.0.iter().find(|&&i| i >= g.s()) {
            Some(i) => Err(Error::InvalidConfig(format!("word letter {} out of range", i + 1))),
            None => Ok(()),
        }
    }

    /// 1-based indices, for serialization.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

/// Length first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::Parse(format!("bad word letter {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// `f_w(z) = A z^D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    pub a: Rational,
    pub d: i64,
}

/// `A = prod a_i^{k_i}` kept as an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentComposite {
    pub k: Vec<i128>,
    pub d: i128,
}

impl ExponentComposite {
    pub fn identity(s: usize) -> Self {
        ExponentComposite { k: vec![0; s], d: 1 }
    }

    /// Post-compose with generator i: `a_i (A z^D)^{d_i}`.
    pub fn then(&self, g: &Semigroup, i: usize) -> Result<Self> {
        let di = g.generators[i].d as i128;
        let overflow = || Error::OverflowGuard { steps: 0, partial: f64::NAN };
        let mut k = Vec::with_capacity(self.k.len());
        for (j, &kj) in self.k.iter().enumerate() {
            let v = kj.checked_mul(di).ok_or_else(overflow)?;
            k.push(if j == i { v.checked_add(1).ok_or_else(overflow)? } else { v });
        }
        Ok(ExponentComposite { k, d: self.d.checked_mul(di).ok_or_else(overflow)? })
    }

    pub fn of_word(g: &Semigroup, w: &Word) -> Result<Self> {
        w.validate(g)?;
        let mut e = Self::identity(g.s());
        for &i in &w.0 {
            e = e.then(g, i)?;
        }
        Ok(e)
    }

    /// Exact factorization of `A`.
    pub fn factorization(&self, g: &Semigroup) -> PrimeFactorization {
        let mut acc = PrimeFactorization { sign: 1, exponents: vec![] };
        for (i, &k) in self.k.iter().enumerate() {
            acc = acc.combine(1, g.factorization(i), k as i64);
        }
        acc
    }

    pub fn coefficient(&self, g: &Semigroup) -> Rational {
        self.factorization(g).to_rational()
    }
}

/// Closed form of a nonempty word.
pub fn compose_word(g: &Semigroup, w: &Word) -> Result<Composite> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    compose_word_or_identity(g, w)
}

/// As [`compose_word`], with the empty word giving `(1, 1)`.
pub fn compose_word_or_identity(g: &Semigroup, w: &Word) -> Result<Composite> {
    w.validate(g)?;
    let mut a = Rational::one();
    let mut d: i64 = 1;
    for &i in &w.0 {
        let f = &g.generators[i];
        a = &f.a * rat_pow(&a, f.d);
        d = d
            .checked_mul(f.d)
            .ok_or(Error::OverflowGuard { steps: w.len(), partial: f64::NAN })?;
    }
    Ok(Composite { a, d })
}

/// Exact value of `r(G, v)`.
#[derive(Debug, Clone, PartialEq)]
pub enum RExact {
    /// `r = H^{-1/k}` with `H >= 1` rational.
    Archimedean { h: Rational, k: u64 },
    /// `r = p^{-e}` with `e >= 0`.
    Finite { p: u64, e: Rational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusOfG {
    pub place: Place,
    pub exact: RExact,
    pub value: f64,
}

/// `r(G, v) = min_i min(|a_i|_v^{1/(|d_i|-1)}, |a_i|_v^{-1/(|d_i|-1)})`.
pub fn r_of_g(g: &Semigroup, v: Place) -> RadiusOfG {
    match v {
        Place::Infinite => {
            let mut best: Option<(Rational, u64)> = None;
            for f in &g.generators {
                let x = f.a.abs();
                let h = if x >= Rational::one() { x } else { x.recip() };
                let k = f.d.unsigned_abs() - 1;
                // h^{1/k} larger means r smaller
                let better = match &best {
                    None => true,
                    Some((bh, bk)) => rat_pow(&h, *bk as i64) > rat_pow(bh, k as i64),
                };
                if better {
                    best = Some((h, k));
                }
            }
            let (h, k) = best.expect("semigroup is nonempty");
            let value = (-crate::ntcore::rational::ln_abs_rational(&h) / k as f64).exp();
            RadiusOfG { place: v, exact: RExact::Archimedean { h, k }, value }
        }
        Place::Finite(p) => {
            let e = g
                .generators
                .iter()
                .map(|f| Rational::new(ord_p(&f.a, p).abs().into(), BigInt::from(f.d.abs() - 1)))
                .max()
                .expect("semigroup is nonempty");
            let value = (-crate::ntcore::rational::rat_to_f64(&e) * (p as f64).ln()).exp();
            RadiusOfG { place: v, exact: RExact::Finite { p, e }, value }
        }
    }
}

/// Where `|x|_v` sits relative to the window `[r, 1/r]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowPosition {
    Below,
    Inside,
    Above,
}

/// Exact comparison of `|x|_v` with `[r(G,v), 1/r(G,v)]`.
pub fn size_window(g: &Semigroup, x: &RadicalPoint, v: Place) -> WindowPosition {
    match r_of_g(g, v).exact {
        RExact::Archimedean { h, k } => {
            // |x| = c^{1/M}; compare c^k with H^{-M} and H^M
            let ck = rat_pow(x.c(), k as i64);
            let hm = rat_pow(&h, x.m() as i64);
            if ck.clone() * &hm < Rational::one() {
                WindowPosition::Below
            } else if ck > hm {
                WindowPosition::Above
            } else {
                WindowPosition::Inside
            }
        }
        RExact::Finite { e, .. } => {
            let Place::Finite(p) = v else { unreachable!() };
            let o = x.ord(p);
            // |x|_p = p^{-o}
            if o > e {
                WindowPosition::Below
            } else if -o > e {
                WindowPosition::Above
            } else {
                WindowPosition::Inside
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};

    fn w(v: &[usize]) -> Word {
        Word(v.iter().map(|i| i - 1).collect())
    }

    #[test]
    fn composites() {
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        assert_eq!(compose_word(&g, &w(&[1, 2])).unwrap(), Composite { a: rat_int(24), d: 6 });
        assert_eq!(compose_word(&g, &w(&[1])).unwrap(), Composite { a: rat_int(2), d: 2 });
        assert_eq!(compose_word(&g, &Word::empty()), Err(Error::EmptyWord));
        let g = Semigroup::from_triples(&[(2, 1, 2), (1, 3, -2)]).unwrap();
        assert_eq!(compose_word(&g, &w(&[1, 2])).unwrap(), Composite { a: rat(1, 12), d: -4 });
        let e = ExponentComposite::of_word(&g, &w(&[1, 2])).unwrap();
        assert_eq!(e.coefficient(&g), rat(1, 12));
        assert_eq!(e.d, -4);
    }

    #[test]
    fn radii() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        assert!((r_of_g(&g, Place::Infinite).value - 0.5).abs() < 1e-15);
        let g = Semigroup::from_triples(&[(1, 1, 3)]).unwrap();
        assert_eq!(r_of_g(&g, Place::Infinite).value, 1.0);
        assert_eq!(r_of_g(&g, Place::Finite(5)).value, 1.0);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let r = r_of_g(&g, Place::Finite(3));
        assert_eq!(r.exact, RExact::Finite { p: 3, e: rat(1, 2) });
        assert!((r.value - 3f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn reduction() {
        let f = MonomialMap::new(rat_int(2), 2).unwrap();
        assert!(f.good_reduction(3));
        assert!(!f.good_reduction(2));
        let f = MonomialMap::new(rat_int(1), -5).unwrap();
        assert!([2, 3, 5, 7].iter().all(|&p| f.good_reduction(p)));
    }

    #[test]
    fn window_positions() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let two = RadicalPoint::from_rational(&rat_int(2)).unwrap();
        assert_eq!(size_window(&g, &two, Place::Infinite), WindowPosition::Inside);
        let three = RadicalPoint::from_rational(&rat_int(3)).unwrap();
        assert_eq!(size_window(&g, &three, Place::Infinite), WindowPosition::Above);
        assert_eq!(size_window(&g, &three, Place::Finite(3)), WindowPosition::Below);
    }

    #[test]
    fn config_round_trip() {
        let g = Semigroup::from_json(r#"{"generators":[{"a":"2","d":2},{"a":"1/3","d":-2}]}"#).unwrap();
        assert_eq!(g.s(), 2);
        let back = serde_json::to_string(&g).unwrap();
        assert_eq!(Semigroup::from_json(&back).unwrap(), g);
        assert!(Semigroup::from_json(r#"{"generators":[{"a":"2","d":1}]}"#).is_err());
        assert!(Semigroup::from_json(r#"{"generators":[]}"#).is_err());
        assert_eq!("1,2,1".parse::<Word>().unwrap(), Word(vec![0, 1, 0]));
        assert_eq!(Word(vec![0, 1]).to_string(), "1,2");
    }
}
