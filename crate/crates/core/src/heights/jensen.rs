//! Equilibrium circles and a quadrature check of Jensen's formula.

use super::closed_form_data;
use crate::error::{Error, Result};
use crate::ntcore::rational::{rat_int, Rational};
use crate::ntcore::{Modulus, Place};
use crate::semigroup::{Semigroup, Word};
use serde::Serialize;
use std::f64::consts::PI;

/// Radius of the circle carrying the equilibrium measure at `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumRadius {
    pub v: Place,
    pub radius: f64,
    /// `|a|^{-1/k} |b|^{-1/(k(l-1))}` as prime exponents.
    #[serde(skip)]
    pub exact: Modulus,
}

pub fn equilibrium_radius(g: &Semigroup, g1: &Word, g2: &Word) -> Result<EquilibriumRadius> {
    let data = closed_form_data(g, g1, g2)?;
    let m = data.modulus_with(&Modulus::one())?.scale(&rat_int(-1));
    Ok(EquilibriumRadius { v: Place::Infinite, radius: m.ln_archimedean().exp(), exact: m })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JensenResult {
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

/// Trapezoidal rule for `(1/2pi) int log|r e^{i theta} - beta| d theta`
/// on nodes `2 pi (j + 1/2) / nodes`, against `log max(r, |beta|)`.
pub fn jensen_check(radius: f64, beta: &Rational, nodes: usize) -> Result<JensenResult> {
    if nodes < 16 {
        return Err(Error::InvalidConfig("jensen_check needs at least 16 nodes".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidConfig("radius must be positive".into()));
    }
    let b = crate::ntcore::rational::rat_to_f64(beta);
    let n = nodes as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in 0..nodes {
        let th = 2.0 * PI * (j as f64 + 0.5) / n;
        let dist = (radius * th.cos() - b).hypot(radius * th.sin());
        if dist == 0.0 || (b == -radius && 2 * j + 1 == nodes) {
            return Err(Error::QuadratureSingular);
        }
        // Kahan summation
        let y = dist.ln() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let lhs = sum / n;
    let rhs = radius.max(b.abs()).ln();
    Ok(JensenResult { lhs, rhs, diff: (lhs - rhs).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;

    #[test]
    fn radii() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let r = equilibrium_radius(&g, &Word::empty(), &Word(vec![0])).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-15);
        let g = Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).unwrap();
        let r = equilibrium_radius(&g, &Word(vec![0]), &Word(vec![1])).unwrap();
        assert!((r.radius - 2f64.powf(-0.5) * 3f64.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn examples() {
        let j = jensen_check(1.0, &rat_int(2), 1 << 10).unwrap();
        assert!((j.rhs - 2f64.ln()).abs() < 1e-15 && j.diff < 1e-12);
        let j = jensen_check(1.0, &rat(1, 2), 1 << 10).unwrap();
        assert_eq!(j.rhs, 0.0);
        assert!(j.diff < 1e-12);
        let j = jensen_check(0.5, &rat_int(3), 1 << 16).unwrap();
        assert!((j.rhs - 3f64.ln()).abs() < 1e-15 && j.diff < 1e-6);
    }

    #[test]
    fn singular_and_halving() {
        assert_eq!(jensen_check(1.0, &rat_int(-1), 17), Err(Error::QuadratureSingular));
        assert!(jensen_check(1.0, &rat_int(-1), 16).is_ok());
        let mut prev = jensen_check(1.0, &rat(11, 10), 16).unwrap().diff;
        for k in 5..9 {
            let d = jensen_check(1.0, &rat(11, 10), 1 << k).unwrap().diff;
            assert!(d <= prev / 2.0 || d < 1e-13, "{k}: {d} vs {prev}");
            prev = d;
        }
    }
}
