//! Enumeration of preperiodic points by word pairs, deduplicated by
//! canonical form and grouped into Galois orbits.

use super::orbit::{galois_orbit, GaloisOrbit};
use super::structure::{collision_from_composites, structure_decompose, CollisionBinomial, StructuredPreper};
use crate::error::{Error, Result};
use crate::ntcore::rational::Rational;
use crate::semigroup::radical::reduce_modulus;
use crate::semigroup::{Angle, ExponentComposite, RadicalPoint, Semigroup, Word};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_ROOT_CAP: usize = 20_000_000;

/// `f_w(alpha) = f_{w[..m]}(alpha)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub word: Word,
    pub m: usize,
}

impl Ord for Witness {
    fn cmp(&self, o: &Self) -> Ordering {
        self.word.cmp(&o.word).then(self.m.cmp(&o.m))
    }
}

impl PartialOrd for Witness {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Witness {
    /// Preperiod word `w[..m]` and period word `w[m..]`.
    pub fn split(&self) -> (Word, Word) {
        (self.word.prefix(self.m), Word(self.word.0[self.m..].to_vec()))
    }
}

/// One Galois orbit of preperiodic points with its first witness.
#[derive(Debug, Clone)]
pub struct PreperOrbit {
    pub orbit: GaloisOrbit,
    pub witness: Witness,
    pub binomial: CollisionBinomial,
    pub structure: StructuredPreper,
}

impl PreperOrbit {
    pub fn degree(&self) -> u64 {
        self.orbit.degree()
    }

    pub fn representative(&self) -> &RadicalPoint {
        &self.orbit.point
    }

    pub fn points(&self) -> Vec<RadicalPoint> {
        self.orbit.conjugate_points()
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub max_wordlen: usize,
    pub orbits: Vec<PreperOrbit>,
    /// Points whose decomposition has no rational `b`.
    pub no_rational_b: usize,
}

impl Enumeration {
    pub fn point_count(&self) -> u64 {
        self.orbits.iter().map(|o| o.degree()).sum()
    }

    /// 0 and infinity are fixed by every monomial map.
    pub fn special_points(&self) -> [&'static str; 2] {
        ["0", "inf"]
    }
}

/// Words of length `1..=n_max` over `s` letters in length-lex order.
pub fn words_up_to(s: usize, n_max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level = vec![Word::empty()];
    for _ in 0..n_max {
        let mut next = Vec::with_capacity(level.len() * s);
        for w in &level {
            for i in 0..s {
                let mut v = w.0.clone();
                v.push(i);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

type GroupKey = (Rational, u64);

struct PairData {
    witness: Witness,
    binomial: CollisionBinomial,
}

/// All nonzero preperiodic points with a witness of length `<= n_max`.
pub fn enumerate_preperiodic(g: &Semigroup, n_max: usize) -> Result<Enumeration> {
    enumerate_preperiodic_capped(g, n_max, DEFAULT_ROOT_CAP)
}

pub fn enumerate_preperiodic_capped(g: &Semigroup, n_max: usize, cap: usize) -> Result<Enumeration> {
    if n_max == 0 {
        return Err(Error::DepthNonPositive);
    }
    let mut pairs: Vec<PairData> = Vec::new();
    let mut groups: BTreeMap<GroupKey, HashMap<Angle, usize>> = BTreeMap::new();
    let mut roots = 0usize;
    for w in words_up_to(g.s(), n_max) {
        let mut prefixes = vec![ExponentComposite::identity(g.s())];
        for &i in &w.0 {
            let next = prefixes.last().expect("nonempty").then(g, i)?;
            prefixes.push(next);
        }
        let full = prefixes.last().expect("nonempty").clone();
        for m in 0..w.len() {
            let cb = match collision_from_composites(g, &full, &prefixes[m]) {
                Ok(cb) => cb,
                Err(Error::DegenerateCollision) => continue,
                Err(e) => return Err(e),
            };
            roots = roots.saturating_add(cb.n as usize);
            if roots > cap {
                return Err(Error::EnumerationCap { cap });
            }
            let (c, mm) = reduce_modulus(cb.a.abs(), cb.n);
            let half = u64::from(cb.a.is_negative());
            let idx = pairs.len();
            let group = groups.entry((c, mm)).or_default();
            let den = 2 * cb.n;
            for j in 0..cb.n {
                let t = Angle::new((2 * j + half) as i128, den);
                group.entry(t).or_insert(idx);
            }
            pairs.push(PairData { witness: Witness { word: w.clone(), m }, binomial: cb });
        }
    }

    let groups: Vec<(GroupKey, HashMap<Angle, usize>)> = groups.into_iter().collect();
    let per_group: Vec<Result<Vec<PreperOrbit>>> = groups
        .into_par_iter()
        .map(|((c, m), mut angles)| {
            let mut sorted: Vec<Angle> = angles.keys().copied().collect();
            sorted.sort_unstable();
            let mut out = Vec::new();
            for t in sorted {
                let Some(&idx) = angles.get(&t) else { continue };
                let point = RadicalPoint::new(c.clone(), m, t)?;
                let orbit = galois_orbit(&point)?;
                for a in orbit.angles() {
                    match angles.remove(&a) {
                        Some(j) if pairs[j].witness == pairs[idx].witness => {}
                        Some(_) => {
                            return Err(Error::InvariantViolation(format!(
                                "conjugates of {point} have different first witnesses"
                            )))
                        }
                        None => {
                            return Err(Error::InvariantViolation(format!(
                                "conjugate {a} of {point} missing from its binomial's roots"
                            )))
                        }
                    }
                }
                let pd = &pairs[idx];
                let structure = structure_decompose(&pd.binomial, g, &point)?;
                out.push(PreperOrbit {
                    orbit,
                    witness: pd.witness.clone(),
                    binomial: pd.binomial.clone(),
                    structure,
                });
            }
            Ok(out)
        })
        .collect();
    let mut orbits = Vec::new();
    for r in per_group {
        orbits.extend(r?);
    }
    orbits.sort_by(|a, b| {
        a.witness
            .cmp(&b.witness)
            .then_with(|| a.orbit.point.cmp(&b.orbit.point))
    });
    let no_rational_b = orbits.iter().filter(|o| o.structure.b.is_none()).count();
    Ok(Enumeration { max_wordlen: n_max, orbits, no_rational_b })
}

/// One line of the `preper` JSON-lines output.
#[derive(Debug, Clone, Serialize)]
pub struct PreperRecord {
    pub c: String,
    #[serde(rename = "M")]
    pub m: u64,
    pub t: String,
    pub witness: Vec<usize>,
    pub prefix: usize,
    pub minpoly: Option<Vec<String>>,
    pub degree: u64,
}

impl PreperOrbit {
    /// Records for every conjugate; the minimal polynomial is included up
    /// to `cap`.
    pub fn records(&self, cap: usize) -> Result<Vec<PreperRecord>> {
        let minpoly = if self.degree() as usize <= cap {
            let f = super::minpoly::orbit_minpoly(&self.orbit, cap)?;
            Some(f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
        } else {
            None
        };
        Ok(self
            .points()
            .into_iter()
            .map(|p| PreperRecord {
                c: p.c().to_string(),
                m: p.m(),
                t: p.t().to_string(),
                witness: self.witness.word.one_based(),
                prefix: self.witness.m,
                minpoly: minpoly.clone(),
                degree: self.degree(),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;
    use std::collections::BTreeSet;

    fn all_points(e: &Enumeration) -> BTreeSet<RadicalPoint> {
        e.orbits.iter().flat_map(|o| o.points()).collect()
    }

    #[test]
    fn power_map_roots_of_unity() {
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let e = enumerate_preperiodic(&g, 3).unwrap();
        // roots of z^{2^j - 2^i} = 1 for 0 <= i < j <= 3
        let mut want = BTreeSet::new();
        for j in 1..=3u32 {
            for i in 0..j {
                let n = 2u64.pow(j) - 2u64.pow(i);
                for k in 0..n {
                    want.insert(RadicalPoint::root_of_unity(Angle::new(k as i128, n)));
                }
            }
        }
        assert_eq!(all_points(&e), want);
        let orders: BTreeSet<u64> = e.orbits.iter().map(|o| o.orbit.point.q()).collect();
        assert_eq!(orders, [1, 2, 3, 4, 6, 7].into_iter().collect());
    }

    #[test]
    fn conjugated_power_map() {
        // 2z^2 = phi z^2 phi^{-1} with phi(z) = z/2
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let e = enumerate_preperiodic(&g, 2).unwrap();
        let want: BTreeSet<RadicalPoint> = [1u64, 2, 3]
            .iter()
            .flat_map(|&n| {
                (0..n).map(move |k| {
                    RadicalPoint::new(rat(1, 2), 1, Angle::new(k as i128, n)).unwrap()
                })
            })
            .collect();
        assert_eq!(all_points(&e), want);
    }

    #[test]
    fn two_generator_fixed_points() {
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let e = enumerate_preperiodic(&g, 1).unwrap();
        let got = all_points(&e);
        let want: BTreeSet<RadicalPoint> = [
            RadicalPoint::from_rational(&rat(1, 2)).unwrap(),
            RadicalPoint::new(rat(1, 3), 2, Angle::ZERO).unwrap(),
            RadicalPoint::new(rat(1, 3), 2, Angle::HALF).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert_eq!(e.orbits.len(), 2);
    }

    #[test]
    fn witnesses_replay() {
        let g = Semigroup::from_triples(&[(2, 1, 2), (-1, 3, -2)]).unwrap();
        let e = enumerate_preperiodic(&g, 3).unwrap();
        for o in &e.orbits {
            for p in o.points() {
                let mut path = vec![p.clone()];
                for &i in &o.witness.word.0 {
                    let f = &g.generators()[i];
                    let y = path.last().unwrap().apply(&f.a, f.d).unwrap();
                    path.push(y);
                }
                assert_eq!(path[o.witness.m], *path.last().unwrap(), "{p}");
            }
        }
    }
}
