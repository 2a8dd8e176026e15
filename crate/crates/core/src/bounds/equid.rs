//! Truncated-log test functions, circle discrepancy, disc counting.

use crate::error::{Error, Result};
use crate::ntcore::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use std::f64::consts::{E, PI};

/// `log R - log delta`.
pub fn test_function_energy(delta: f64, r: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < r) {
        return Err(Error::BadWindow);
    }
    Ok(r.ln() - delta.ln())
}

pub fn test_function_lipschitz(delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::BadWindow);
    }
    Ok(1.0 / delta)
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `1/N + max(x_i - i/N) - min(x_i - i/N)` over sorted angles.
pub fn discrepancy_on_circle_exact(angles: &[Rational]) -> Result<Rational> {
    if angles.is_empty() {
        return Err(Error::InvalidConfig("no angles".into()));
    }
    let mut xs: Vec<Rational> = angles.iter().map(frac).collect();
    xs.sort();
    let n = BigInt::from(xs.len());
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (i, x) in xs.iter().enumerate() {
        let d = x - Rational::new(BigInt::from(i + 1), n.clone());
        if lo.as_ref().is_none_or(|l| d < *l) {
            lo = Some(d.clone());
        }
        if hi.as_ref().is_none_or(|h| d > *h) {
            hi = Some(d);
        }
    }
    Ok(Rational::new(BigInt::from(1), n) + hi.expect("nonempty") - lo.expect("nonempty"))
}

pub fn discrepancy_on_circle(angles: &[f64]) -> Result<f64> {
    if angles.is_empty() {
        return Err(Error::InvalidConfig("no angles".into()));
    }
    let mut xs: Vec<f64> = angles.iter().map(|x| x.rem_euclid(1.0)).collect();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, x) in xs.iter().enumerate() {
        let d = x - (i + 1) as f64 / n;
        lo = lo.min(d);
        hi = hi.max(d);
    }
    Ok(1.0 / n + hi - lo)
}

/// Sup over arcs by direct search: closed arcs `[x_i, x_j]` for the excess
/// and open arcs `(x_i, x_j)` for the deficit.
pub fn discrepancy_brute_force(angles: &[Rational]) -> Result<Rational> {
    if angles.is_empty() {
        return Err(Error::InvalidConfig("no angles".into()));
    }
    let mut xs: Vec<Rational> = angles.iter().map(frac).collect();
    xs.sort();
    let n = xs.len();
    let nn = BigInt::from(n);
    let one = rat_int(1);
    let mut best = Rational::zero();
    for i in 0..n {
        // offsets from x_i, ascending
        let mut offs: Vec<Rational> = (0..n).map(|k| frac(&(&xs[(i + k) % n] - &xs[i]))).collect();
        offs.sort();
        let at_zero = offs.iter().take_while(|o| o.is_zero()).count();
        for j in 0..n {
            let len = offs[j].clone();
            let closed = offs.partition_point(|o| *o <= len);
            let excess = Rational::new(BigInt::from(closed), nn.clone()) - &len;
            let (olen, open) = if len.is_zero() {
                (one.clone(), n - at_zero)
            } else {
                (len.clone(), offs.partition_point(|o| *o < len) - at_zero)
            };
            let deficit = olen - Rational::new(BigInt::from(open), nn.clone());
            for d in [excess, deficit] {
                if d > best {
                    best = d;
                }
            }
        }
    }
    Ok(best)
}

/// Normalized arc-length measure of `|z| = radius` inside the closed disc
/// `D(w, rho)`.
pub fn arc_measure(radius: f64, w: Complex64, rho: f64) -> f64 {
    let d = w.norm();
    if d + radius <= rho {
        return 1.0;
    }
    if d >= radius + rho || radius >= d + rho || d == 0.0 {
        return 0.0;
    }
    let c = ((radius * radius + d * d - rho * rho) / (2.0 * radius * d)).clamp(-1.0, 1.0);
    c.acos() / PI
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscCount {
    pub lhs: usize,
    pub rhs: f64,
    pub arc_measure: f64,
    pub ok: bool,
}

fn error_scale(n: f64, eps: f64, kappa: f64) -> f64 {
    1.0 / (eps * n.powf(1.0 / kappa - 1.0)) + (n * n.ln()).sqrt()
}

fn disc_inputs(z: &[Complex64], eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0 / E) {
        return Err(Error::InvalidConfig("disc radius must lie in (0, 1/e)".into()));
    }
    if z.len() < 2 {
        return Err(Error::InvalidConfig("need at least two points".into()));
    }
    Ok(())
}

/// `|Z cap D(w, eps)| <= rho(D(w, e eps)) |Z| + C (1/(eps |Z|^{1/kappa - 1}) + sqrt(|Z| log |Z|))`
/// with `rho` uniform on the circle of the given radius.
pub fn disc_count_check(z: &[Complex64], w: Complex64, eps: f64, radius: f64, c: f64, kappa: f64) -> Result<DiscCount> {
    disc_inputs(z, eps)?;
    let n = z.len() as f64;
    let lhs = z.iter().filter(|p| (**p - w).norm() < eps).count();
    let mu = arc_measure(radius, w, E * eps);
    let rhs = mu * n + c * error_scale(n, eps, kappa);
    Ok(DiscCount { lhs, rhs, arc_measure: mu, ok: lhs as f64 <= rhs })
}

/// Smallest `C` making the check pass for this configuration.
pub fn disc_count_excess(z: &[Complex64], w: Complex64, eps: f64, radius: f64, kappa: f64) -> Result<f64> {
    let r = disc_count_check(z, w, eps, radius, 0.0, kappa)?;
    let n = z.len() as f64;
    Ok(((r.lhs as f64 - r.rhs) / error_scale(n, eps, kappa)).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn energy() {
        assert!((test_function_energy(1.0 / E, E).unwrap() - 2.0).abs() < 1e-15);
        assert!((test_function_energy(0.3, 0.6).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(test_function_lipschitz(0.1).unwrap(), 10.0);
        assert_eq!(test_function_energy(2.0, 1.0), Err(Error::BadWindow));
        let a = test_function_energy(0.1, 0.5).unwrap() + test_function_energy(0.5, 3.0).unwrap();
        assert!((a - test_function_energy(0.1, 3.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn discrepancy_examples() {
        for m in 1..20i64 {
            let xs: Vec<Rational> = (0..m).map(|k| rat(k, m)).collect();
            assert_eq!(discrepancy_on_circle_exact(&xs).unwrap(), rat(1, m));
            assert_eq!(discrepancy_brute_force(&xs).unwrap(), rat(1, m));
        }
        assert_eq!(discrepancy_on_circle_exact(&[rat(1, 3)]).unwrap(), rat_int(1));
        assert_eq!(discrepancy_on_circle(&[0.25]).unwrap(), 1.0);
    }

    #[test]
    fn formula_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            let den = rng.gen_range(1..40i64);
            let xs: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..den), den)).collect();
            assert_eq!(discrepancy_on_circle_exact(&xs).unwrap(), discrepancy_brute_force(&xs).unwrap(), "{xs:?}");
        }
    }

    #[test]
    fn disc_examples() {
        let z: Vec<Complex64> = (0..12).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 12.0)).collect();
        let r = disc_count_check(&z, Complex64::new(1.0, 0.0), 0.1, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.lhs, 1);
        assert!(r.ok);
        let r = disc_count_check(&z, Complex64::new(3.0, 0.0), 0.1, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((r.lhs, r.arc_measure), (0, 0.0));
        let r = disc_count_check(&z, Complex64::new(0.0, 0.0), 0.2, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((r.lhs, r.arc_measure), (0, 0.0));
        // chord geometry: a disc of radius 1 centred on the unit circle covers a third of it
        assert!((arc_measure(1.0, Complex64::new(1.0, 0.0), 1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(arc_measure(1.0, Complex64::new(0.0, 0.0), 2.0), 1.0);
    }
}
