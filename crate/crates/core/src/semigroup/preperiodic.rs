//! Orbit trees and the preperiodicity semi-decision.

use super::radical::RadicalPoint;
use super::{size_window, Semigroup, WindowPosition, Word};
use crate::error::{Error, Result};
use crate::ntcore::arith::{factor_biguint, strip_prime};
use crate::ntcore::Place;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitNode {
    pub word: Word,
    pub point: RadicalPoint,
}

/// Reasons a point cannot be preperiodic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `|x|_v` lies outside `[r(G,v), 1/r(G,v)]`.
    SizeOutOfRange { place: Place },
    /// `h(x) > sum_i h(a_i)`.
    HeightTooLarge,
    /// Every word of this length passes through a point carrying one of
    /// the certificates above.
    OrbitEscape { generations: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum PreperStatus {
    /// `f_w(x) = f_{w[..m]}(x)`.
    Preperiodic { word: Word, m: usize },
    NotPreperiodic { certificate: Certificate },
    Unknown { depth: usize },
}

fn total_nodes(s: usize, depth: usize, cap: usize) -> Result<usize> {
    let mut level = 1usize;
    let mut total = 1usize;
    for _ in 0..depth {
        level = level.checked_mul(s).filter(|&v| v <= cap).ok_or(Error::TreeSizeCap { cap })?;
        total = total.checked_add(level).filter(|&v| v <= cap).ok_or(Error::TreeSizeCap { cap })?;
    }
    Ok(total)
}

/// All `f_w(x)` for `|w| <= depth` in length-lexicographic order. A node
/// equal to a point earlier on its own path is dropped together with its
/// subtree.
pub fn orbit_tree(g: &Semigroup, x: &RadicalPoint, depth: usize, cap: usize) -> Result<Vec<OrbitNode>> {
    total_nodes(g.s(), depth, cap)?;
    let root = OrbitNode { word: Word::empty(), point: x.clone() };
    let mut out = vec![root.clone()];
    // each frontier entry carries its path of points
    let mut frontier: Vec<(OrbitNode, Vec<RadicalPoint>)> = vec![(root, vec![x.clone()])];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (node, path) in &frontier {
            for (i, f) in g.generators().iter().enumerate() {
                let y = node.point.apply(&f.a, f.d)?;
                if path.contains(&y) {
                    continue;
                }
                let mut word = node.word.clone();
                word.0.push(i);
                let child = OrbitNode { word, point: y.clone() };
                out.push(child.clone());
                let mut p = path.clone();
                p.push(y);
                next.push((child, p));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// `H(c) > prod H(a_i)^M`, i.e. `h(x) > sum h(a_i)`, exactly.
fn height_exceeds(g: &Semigroup, x: &RadicalPoint) -> bool {
    let big = |r: &crate::Rational| -> BigUint {
        let n = r.numer().magnitude();
        let d = r.denom().magnitude();
        if n > d { n.clone() } else { d.clone() }
    };
    let lhs = big(x.c());
    let mut rhs = BigUint::one();
    for f in g.generators() {
        rhs *= big(&f.a).pow(x.m() as u32);
        if rhs >= lhs {
            return false;
        }
    }
    lhs > rhs
}

/// A certificate that `x` is not preperiodic, if one is found at the
/// archimedean place, the primes of the `a_i`, or the primes of `c`.
pub fn point_certificate(g: &Semigroup, x: &RadicalPoint) -> Option<Certificate> {
    if height_exceeds(g, x) {
        return Some(Certificate::HeightTooLarge);
    }
    if size_window(g, x, Place::Infinite) != WindowPosition::Inside {
        return Some(Certificate::SizeOutOfRange { place: Place::Infinite });
    }
    let support = g.support_primes();
    for &p in &support {
        if size_window(g, x, Place::Finite(p)) != WindowPosition::Inside {
            return Some(Certificate::SizeOutOfRange { place: Place::Finite(p) });
        }
    }
    // any prime of c outside the support violates the window (r = 1 there)
    for part in [x.c().numer().magnitude(), x.c().denom().magnitude()] {
        let mut rest = part.clone();
        for &p in &support {
            strip_prime(&mut rest, p);
        }
        if !rest.is_one() {
            let f = factor_biguint(&rest, 1 << 12);
            if let Some(&(p, _)) = f.primes.first() {
                return Some(Certificate::SizeOutOfRange { place: Place::Finite(p) });
            }
        }
    }
    None
}

/// Breadth-first search for a witness `f_w(x) = f_{w[..m]}(x)`, with
/// certificates pruning dead branches. A preperiodic point has an
/// infinite path of preperiodic descendants, so a level where every
/// branch has died certifies the negative answer.
pub fn is_preperiodic(g: &Semigroup, x: &RadicalPoint, depth: usize) -> Result<PreperStatus> {
    if depth == 0 {
        return Err(Error::DepthNonPositive);
    }
    if let Some(c) = point_certificate(g, x) {
        return Ok(PreperStatus::NotPreperiodic { certificate: c });
    }
    let mut frontier: Vec<(Word, Vec<RadicalPoint>)> = vec![(Word::empty(), vec![x.clone()])];
    for level in 1..=depth {
        let mut next = Vec::new();
        for (word, path) in &frontier {
            let last = path.last().expect("paths are nonempty");
            for (i, f) in g.generators().iter().enumerate() {
                let y = last.apply(&f.a, f.d)?;
                let mut w = word.clone();
                w.0.push(i);
                if let Some(m) = path.iter().position(|p| *p == y) {
                    return Ok(PreperStatus::Preperiodic { word: w, m });
                }
                if point_certificate(g, &y).is_some() {
                    continue;
                }
                let mut p = path.clone();
                p.push(y);
                next.push((w, p));
            }
        }
        if next.is_empty() {
            return Ok(PreperStatus::NotPreperiodic {
                certificate: Certificate::OrbitEscape { generations: level },
            });
        }
        if next.len() > DEFAULT_NODE_CAP {
            return Err(Error::TreeSizeCap { cap: DEFAULT_NODE_CAP });
        }
        frontier = next;
    }
    Ok(PreperStatus::Unknown { depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};
    use crate::semigroup::radical::Angle;

    #[test]
    fn preperiodic_examples() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let half = RadicalPoint::from_rational(&rat(1, 2)).unwrap();
        assert_eq!(
            is_preperiodic(&g, &half, 3).unwrap(),
            PreperStatus::Preperiodic { word: Word(vec![0]), m: 0 }
        );
        let two = RadicalPoint::from_rational(&rat_int(2)).unwrap();
        assert_eq!(
            is_preperiodic(&g, &two, 3).unwrap(),
            PreperStatus::NotPreperiodic { certificate: Certificate::OrbitEscape { generations: 1 } }
        );
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let w = RadicalPoint::root_of_unity(Angle::new(1, 3));
        assert_eq!(
            is_preperiodic(&g, &w, 3).unwrap(),
            PreperStatus::Preperiodic { word: Word(vec![0, 0]), m: 0 }
        );
        assert_eq!(is_preperiodic(&g, &w, 0), Err(Error::DepthNonPositive));
    }

    #[test]
    fn certificates() {
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let x = RadicalPoint::from_rational(&rat_int(7)).unwrap();
        assert_eq!(
            is_preperiodic(&g, &x, 2).unwrap(),
            PreperStatus::NotPreperiodic { certificate: Certificate::HeightTooLarge }
        );
        let x = RadicalPoint::new(rat(5, 4), 2, Angle::ZERO).unwrap();
        assert_eq!(
            point_certificate(&g, &x),
            Some(Certificate::SizeOutOfRange { place: Place::Finite(5) })
        );
    }

    #[test]
    fn trees() {
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let two = RadicalPoint::from_rational(&rat_int(2)).unwrap();
        let t: Vec<_> = orbit_tree(&g, &two, 3, DEFAULT_NODE_CAP)
            .unwrap()
            .into_iter()
            .map(|n| n.point.to_rational().unwrap())
            .collect();
        assert_eq!(t, vec![rat_int(2), rat_int(4), rat_int(16), rat_int(256)]);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let one = RadicalPoint::from_rational(&rat_int(1)).unwrap();
        let t: Vec<_> = orbit_tree(&g, &one, 1, DEFAULT_NODE_CAP)
            .unwrap()
            .into_iter()
            .map(|n| n.point.to_rational().unwrap())
            .collect();
        assert_eq!(t, vec![rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(orbit_tree(&g, &one, 0, DEFAULT_NODE_CAP).unwrap().len(), 1);
        assert_eq!(orbit_tree(&g, &one, 25, DEFAULT_NODE_CAP), Err(Error::TreeSizeCap { cap: DEFAULT_NODE_CAP }));
    }
}
