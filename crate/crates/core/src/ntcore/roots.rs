//! Complex root isolation by Aberth iteration with a posteriori
//! inclusion radii, and Mahler-measure heights.

use super::factor::{factor_poly, DEFAULT_DEGREE_CAP};
use super::poly::UniPoly;
use super::rational::rat_to_f64;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Approximate roots with radii: every root of f lies in the union of
/// the disks, and a disk disjoint from the others holds exactly one.
#[derive(Debug, Clone)]
pub struct RootEnclosure {
    pub centers: Vec<Complex64>,
    pub radii: Vec<f64>,
}

fn scaled_coeffs(f: &UniPoly) -> Vec<f64> {
    let (_, z) = f.primitive_int();
    let lmax = z
        .iter()
        .map(|c| super::arith::ln_biguint(c.magnitude()))
        .fold(f64::NEG_INFINITY, f64::max);
    z.iter()
        .map(|c| {
            if c.magnitude().bits() == 0 {
                return 0.0;
            }
            let s = if c.sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
            s * (super::arith::ln_biguint(c.magnitude()) - lmax).exp()
        })
        .collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let az = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        abs_sum = abs_sum * az + a.abs();
    }
    (p, dp, abs_sum)
}

/// Aberth-Ehrlich iteration, then Weierstrass-type inclusion radii
/// `n |f(z_i)| / |lc prod_{j != i} (z_i - z_j)|` inflated by the
/// floating evaluation error.
pub fn isolate_roots(f: &UniPoly, max_iter: usize) -> Result<RootEnclosure> {
    let n = f.deg();
    if n == 0 {
        return Ok(RootEnclosure { centers: vec![], radii: vec![] });
    }
    let c = scaled_coeffs(f);
    let lc = c[n];
    // Fujiwara-style bound for the initial circle
    let mut rad: f64 = 0.0;
    for (k, &a) in c.iter().enumerate().take(n) {
        let r = (a.abs() / lc.abs()).powf(1.0 / (n - k) as f64);
        rad = rad.max(r);
    }
    let rad = 2.0 * rad.max(1e-300);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(rad * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let (p, dp, _) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.norm() > 1e-16 * z[i].norm().max(1e-300) {
                done = false;
            }
            z[i] -= w;
        }
        if done {
            break;
        }
    }
    let eps = f64::EPSILON;
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let (p, _, s) = horner(&c, z[i]);
            let err = p.norm() + 4.0 * (n as f64 + 2.0) * eps * s;
            let denom: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).norm())
                .product::<f64>()
                * lc.abs();
            if denom == 0.0 {
                f64::INFINITY
            } else {
                n as f64 * err / denom
            }
        })
        .collect();
    Ok(RootEnclosure { centers: z, radii })
}

/// `(1/deg) (log|lead| + sum log+ |root|)` for an irreducible f.
pub fn height_from_minpoly(f: &UniPoly) -> Result<f64> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::ReducibleInput);
    }
    if !factor_poly(f, DEFAULT_DEGREE_CAP)?.is_irreducible() {
        return Err(Error::ReducibleInput);
    }
    let (_, z) = f.primitive_int();
    let ln_lead = super::arith::ln_biguint(z[n].magnitude());
    if n == 1 {
        let root = -rat_to_f64(&(f.coeff(0) / f.coeff(1)));
        return Ok(ln_lead + root.abs().ln().max(0.0));
    }
    for iters in [500usize, 2000, 8000] {
        let enc = isolate_roots(f, iters)?;
        let mut total = 0.0;
        let mut err = 0.0;
        for (zc, r) in enc.centers.iter().zip(&enc.radii) {
            let m = zc.norm();
            total += m.ln().max(0.0);
            if *r >= 0.5 * m.max(1e-300) && m > 0.5 {
                err = f64::INFINITY;
            } else {
                // log+ is 1/max(1, |z|-r)-Lipschitz away from the origin
                err += r / (m - r).max(1.0);
            }
        }
        if err < 1e-13 {
            return Ok((ln_lead + total) / n as f64);
        }
    }
    Err(Error::RootIsolationFailure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{height_rational, rat};

    #[test]
    fn heights_from_minpolys() {
        let f = UniPoly::new(vec![rat(-3, 2), rat(1, 1)]);
        assert!((height_from_minpoly(&f).unwrap() - 3f64.ln()).abs() < 1e-12);
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        assert!((height_from_minpoly(&f).unwrap() - 0.5 * 2f64.ln()).abs() < 1e-12);
        let f = UniPoly::from_ints(&[3, 0, 1]);
        assert!((height_from_minpoly(&f).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-12);
        let f = UniPoly::from_ints(&[27, 0, 0, 0, 0, 0, 1]);
        assert_eq!(height_from_minpoly(&f), Err(Error::ReducibleInput));
    }

    #[test]
    fn rational_agreement() {
        for x in [rat(7, 3), rat(-10, 3), rat(1, 9)] {
            let f = UniPoly::new(vec![-x.clone(), rat(1, 1)]);
            assert!((height_from_minpoly(&f).unwrap() - height_rational(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn binomial_height() {
        // h(24^{-1/5}) = log(24)/5
        let f = UniPoly::binomial(5, &rat(1, 24));
        assert!((height_from_minpoly(&f).unwrap() - 24f64.ln() / 5.0).abs() < 1e-12);
    }
}
