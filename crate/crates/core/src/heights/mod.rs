//! Canonical heights along sequences drawn from a monomial semigroup.

pub mod jensen;

pub use jensen::{equilibrium_radius, jensen_check, EquilibriumRadius, JensenResult};

use crate::error::{Error, Result};
use crate::ntcore::rational::{rat_int, Rational};
use crate::ntcore::{factor_rational, height_rational, Modulus, PrimeFactorization};
use crate::semigroup::{compose_word, compose_word_or_identity, RadicalPoint, Semigroup, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

/// `max_i h(a_i) / |d_i|`.
pub fn c_of_g(g: &Semigroup) -> f64 {
    g.generators()
        .iter()
        .map(|f| height_rational(&f.a) / f.d.unsigned_abs() as f64)
        .fold(0.0, f64::max)
}

/// Preperiod letters, then the period repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub preperiod: Word,
    pub period: Word,
}

impl SequenceSpec {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidConfig("period word must be nonempty".into()));
        }
        Ok(SequenceSpec { preperiod, period })
    }

    pub fn letter(&self, k: usize) -> usize {
        let p = self.preperiod.len();
        if k < p {
            self.preperiod.0[k]
        } else {
            self.period.0[(k - p) % self.period.len()]
        }
    }

    pub fn validate(&self, g: &Semigroup) -> Result<()> {
        self.preperiod.validate(g)?;
        self.period.validate(g)
    }

    /// The sequence after dropping its first map.
    pub fn shift(&self) -> SequenceSpec {
        if self.preperiod.is_empty() {
            let mut v = self.period.0[1..].to_vec();
            v.push(self.period.0[0]);
            SequenceSpec { preperiod: Word::empty(), period: Word(v) }
        } else {
            SequenceSpec { preperiod: Word(self.preperiod.0[1..].to_vec()), period: self.period.clone() }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub steps: usize,
}

/// Exponent vector over a fixed prime support, for exact iteration of
/// `x -> a x^d` on rationals.
#[derive(Debug, Clone)]
struct SupportVector {
    primes: Vec<u64>,
    exps: Vec<i128>,
}

impl SupportVector {
    fn new(primes: &[u64], f: &PrimeFactorization) -> Self {
        SupportVector { primes: primes.to_vec(), exps: primes.iter().map(|&p| f.ord(p) as i128).collect() }
    }

    fn apply(&mut self, d: i64, a: &PrimeFactorization) -> Option<()> {
        for (e, &p) in self.exps.iter_mut().zip(&self.primes) {
            *e = e.checked_mul(d as i128)?.checked_add(a.ord(p) as i128)?;
        }
        Some(())
    }

    fn height(&self) -> f64 {
        let (mut pos, mut neg) = (0.0, 0.0);
        for (&e, &p) in self.exps.iter().zip(&self.primes) {
            let v = e as f64 * (p as f64).ln();
            if e > 0 {
                pos += v;
            } else {
                neg -= v;
            }
        }
        f64::max(pos, neg)
    }
}

fn support(g: &Semigroup, beta: &PrimeFactorization) -> Vec<u64> {
    let mut ps = g.support_primes();
    ps.extend(beta.primes());
    ps.sort_unstable();
    ps.dedup();
    ps
}

const MAX_STEPS: usize = 4096;

/// `h(f_{i_1..i_n}(beta)) / |D_n|`, run until `2 c(G) / |D_n| < tol`.
pub fn canonical_height_iterative(g: &Semigroup, seq: &SequenceSpec, beta: &Rational, tol: f64) -> Result<HeightEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig("tolerance must be positive".into()));
    }
    if beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    seq.validate(g)?;
    let c = c_of_g(g);
    let fb = factor_rational(beta)?;
    let primes = support(g, &fb);
    let mut x = SupportVector::new(&primes, &fb);
    let mut dn: f64 = 1.0;
    let mut steps = 0usize;
    loop {
        let err = 2.0 * c / dn;
        if err < tol {
            return Ok(HeightEstimate { value: x.height() / dn, error_bound: err, steps });
        }
        if steps >= MAX_STEPS {
            return Err(Error::OverflowGuard { steps, partial: x.height() / dn });
        }
        let i = seq.letter(steps);
        let f = &g.generators()[i];
        let partial = x.height() / dn;
        x.apply(f.d, g.factorization(i)).ok_or(Error::OverflowGuard { steps, partial })?;
        dn *= f.d.unsigned_abs() as f64;
        steps += 1;
    }
}

/// Data of the closed form: `g1 = a z^k`, `g2 = b z^l` with `l > 1`
/// (a negative period degree is replaced by the doubled period).
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormData {
    pub a: Rational,
    pub k: i64,
    pub b: Rational,
    pub l: i64,
    pub doubled: bool,
}

pub fn closed_form_data(g: &Semigroup, g1: &Word, g2: &Word) -> Result<ClosedFormData> {
    let pre = compose_word_or_identity(g, g1)?;
    let mut per = compose_word(g, g2)?;
    let mut doubled = false;
    if per.d < 0 {
        per = compose_word(g, &g2.concat(g2))?;
        doubled = true;
    }
    if per.d == 1 {
        return Err(Error::DegenerateCollision);
    }
    Ok(ClosedFormData { a: pre.a, k: pre.d, b: per.a, l: per.d, doubled })
}

impl ClosedFormData {
    /// `|a|^{1/k} |b|^{1/(k(l-1))} |x|` as an exact modulus.
    pub fn modulus_with(&self, x: &Modulus) -> Result<Modulus> {
        let ma = Modulus::of_rational(&self.a)?;
        let mb = Modulus::of_rational(&self.b)?;
        let k = BigInt::from(self.k);
        let wa = Rational::new(BigInt::from(1), k.clone());
        let wb = Rational::new(BigInt::from(1), k * BigInt::from(self.l - 1));
        Ok(ma.combine(&wa, &mb, &wb).combine(&rat_int(1), x, &rat_int(1)))
    }
}

/// `sum_v max(0, (1/k) log|a|_v + 1/(k(l-1)) log|b|_v + log|beta|_v)`.
pub fn canonical_height_closed(g: &Semigroup, g1: &Word, g2: &Word, beta: &Rational) -> Result<f64> {
    if beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    canonical_height_closed_modulus(g, g1, g2, &Modulus::of_rational(beta)?)
}

/// The closed form at a radical point, with `log|alpha|_v = log|c|_v / M`.
pub fn canonical_height_closed_radical(g: &Semigroup, g1: &Word, g2: &Word, x: &RadicalPoint) -> Result<f64> {
    canonical_height_closed_modulus(g, g1, g2, &x.modulus()?)
}

pub fn canonical_height_closed_modulus(g: &Semigroup, g1: &Word, g2: &Word, x: &Modulus) -> Result<f64> {
    let data = closed_form_data(g, g1, g2)?;
    Ok(data.modulus_with(x)?.height())
}

/// `max_{n <= depth} min_{|w| = n} (h(f_w(beta)) - 2 c(G)) / |D_w|`,
/// floored at 0: a lower bound for the canonical height of beta along
/// every sequence from G.
pub fn height_lower_bound_nonpreperiodic(g: &Semigroup, beta: &Rational, depth: usize) -> Result<f64> {
    if depth == 0 {
        return Err(Error::DepthNonPositive);
    }
    if beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    let c = c_of_g(g);
    let fb = factor_rational(beta)?;
    let primes = support(g, &fb);
    let mut level = vec![(SupportVector::new(&primes, &fb), 1.0f64)];
    let mut best: f64 = 0.0;
    for n in 0..=depth {
        let worst = level
            .iter()
            .map(|(x, d)| (x.height() - 2.0 * c) / d)
            .fold(f64::INFINITY, f64::min);
        best = best.max(worst);
        if n == depth {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * g.s());
        for (x, d) in &level {
            for (i, f) in g.generators().iter().enumerate() {
                let mut y = x.clone();
                y.apply(f.d, g.factorization(i)).ok_or(Error::OverflowGuard { steps: n, partial: best })?;
                next.push((y, d * f.d.unsigned_abs() as f64));
            }
        }
        if next.len() > crate::semigroup::DEFAULT_NODE_CAP {
            return Err(Error::TreeSizeCap { cap: crate::semigroup::DEFAULT_NODE_CAP });
        }
        level = next;
    }
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};

    fn w(v: &[usize]) -> Word {
        Word(v.iter().map(|i| i - 1).collect())
    }

    #[test]
    fn c_values() {
        assert_eq!(c_of_g(&Semigroup::from_triples(&[(1, 1, 2)]).unwrap()), 0.0);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        // log 3 / 3 exceeds log 2 / 2
        assert!((c_of_g(&g) - 3f64.ln() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn iterative_examples() {
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let seq = SequenceSpec::new(Word::empty(), w(&[1])).unwrap();
        let h = canonical_height_iterative(&g, &seq, &rat_int(3), 1e-9).unwrap();
        assert!((h.value - 3f64.ln()).abs() < 1e-15);
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let h = canonical_height_iterative(&g, &seq, &rat_int(1), 1e-9).unwrap();
        assert!((h.value - 2f64.ln()).abs() <= h.error_bound + 1e-9);
        let h = canonical_height_iterative(&g, &seq, &rat(1, 2), 1e-9).unwrap();
        assert!(h.value.abs() < 1e-9);
    }

    #[test]
    fn closed_examples() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let h = canonical_height_closed(&g, &Word::empty(), &w(&[1]), &rat_int(1)).unwrap();
        assert!((h - 2f64.ln()).abs() < 1e-15);
        assert_eq!(canonical_height_closed(&g, &Word::empty(), &w(&[1]), &rat(1, 2)).unwrap(), 0.0);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let h = canonical_height_closed(&g, &w(&[1]), &w(&[2]), &rat_int(1)).unwrap();
        assert!((h - (2f64.ln() / 2.0 + 3f64.ln() / 4.0)).abs() < 1e-12);
        assert!((h - 0.621226).abs() < 1e-6);
    }

    #[test]
    fn negative_degrees() {
        // g1 = z^{-2}, g2 = 2 z^2, beta = 2: iterates 1/4 -> 1/8 -> 1/32 ...
        let g = Semigroup::from_triples(&[(1, 1, -2), (2, 1, 2)]).unwrap();
        let h = canonical_height_closed(&g, &w(&[1]), &w(&[2]), &rat_int(2)).unwrap();
        assert!((h - 2f64.ln() / 2.0).abs() < 1e-12);
        let seq = SequenceSpec::new(w(&[1]), w(&[2])).unwrap();
        let it = canonical_height_iterative(&g, &seq, &rat_int(2), 1e-10).unwrap();
        assert!((it.value - h).abs() <= it.error_bound + 1e-9);
        // negative period degree uses the doubled period
        let g = Semigroup::from_triples(&[(3, 1, -2)]).unwrap();
        let d = closed_form_data(&g, &Word::empty(), &w(&[1])).unwrap();
        assert!(d.doubled && d.l == 4);
    }

    #[test]
    fn lower_bounds() {
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        assert!(height_lower_bound_nonpreperiodic(&g, &rat_int(2), 2).unwrap() >= 2f64.ln() - 1e-15);
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        assert_eq!(height_lower_bound_nonpreperiodic(&g, &rat(1, 2), 3).unwrap(), 0.0);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        assert!(height_lower_bound_nonpreperiodic(&g, &rat_int(2), 3).unwrap() > 0.0);
    }
}
