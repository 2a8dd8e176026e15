//! Distance from a non-preperiodic rational to preperiodic points, and
//! the count of p-power roots of unity near 1.

use super::{c1_linear_forms, theta_floor};
use crate::error::{Error, Result};
use crate::ntcore::arith::ord_p_bigint;
use crate::ntcore::rational::{ord_p, rat_to_f64, Rational};
use crate::ntcore::{height_rational, newton_polygon_root_valuations, Place, DEFAULT_DEGREE_CAP};
use crate::preper::minpoly::orbit_minpoly;
use crate::preper::modular::norm_at;
use crate::preper::PreperOrbit;
use crate::semigroup::Semigroup;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

/// Inverse of the worst exponent in the chain `log(MQ) << log deg`.
pub const DEGREE_EXPONENT: f64 = 6.0;

/// `C2 = c1(s+2, 1) * N(v)/log N(v) * theta_cap * 6 + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceBoundCert {
    #[serde(rename = "C2")]
    pub c2: f64,
    pub c1: f64,
    /// `prod_i max(h(a_i), fl) * max(sum_i h(a_i), fl) * max(1, fl)`.
    pub theta_cap: f64,
    pub n_over_log_n: f64,
    pub degree_exponent: f64,
}

impl DistanceBoundCert {
    pub fn new(g: &Semigroup, v: Place) -> Self {
        let fl = theta_floor(1);
        let hs: Vec<f64> = g.generators().iter().map(|f| height_rational(&f.a)).collect();
        let mut theta_cap: f64 = hs.iter().map(|h| h.max(fl)).product();
        theta_cap *= hs.iter().sum::<f64>().max(fl);
        theta_cap *= fl.max(1.0);
        let nv = v.norm() as f64;
        let c1 = c1_linear_forms(g.s() as u32 + 2, 1);
        let n_over_log_n = nv / nv.ln();
        let c2 = c1 * n_over_log_n * theta_cap * DEGREE_EXPONENT + 1.0;
        DistanceBoundCert { c2, c1, theta_cap, n_over_log_n, degree_exponent: DEGREE_EXPONENT }
    }

    /// Recompute C2 from the stored factors.
    pub fn assembled(&self) -> f64 {
        self.c1 * self.n_over_log_n * self.theta_cap * self.degree_exponent + 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceBound {
    pub v: Place,
    pub degree: u64,
    #[serde(rename = "MQ")]
    pub mq: u64,
    /// `C2 (h(beta) + 1) log deg`; the claim is `observed_min > -bound`.
    pub bound: f64,
    pub observed_min: f64,
    /// False when `observed_min` is only a lower bound.
    pub exact: bool,
    pub ok: bool,
    pub cert: DistanceBoundCert,
}

/// Largest degree for which the p-adic minimum is read off a Newton
/// polygon; above it a norm-based lower bound is used.
pub const POLYGON_DEGREE_CAP: u64 = 64;

/// `min_sigma log |sigma(alpha) - beta|_v`, or a lower bound for it when
/// `exact` is false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservedMin {
    pub value: f64,
    pub exact: bool,
}

/// `ord_p prod_sigma (sigma(alpha) - beta)` from `F_h(r, s) = L s^deg N`.
pub fn norm_valuation(alpha: &PreperOrbit, beta: &Rational, p: u64) -> Result<i64> {
    let f = norm_at(&alpha.orbit, beta)?;
    if f.is_zero() {
        return Err(Error::BetaIsConjugate);
    }
    let lead = BigInt::from(alpha.orbit.lead());
    let deg = alpha.degree() as i64;
    Ok(ord_p_bigint(&f, p) as i64 - ord_p_bigint(&lead, p) as i64 - deg * ord_p_bigint(beta.denom(), p) as i64)
}

pub fn observed_min_distance(alpha: &PreperOrbit, beta: &Rational, v: Place) -> Result<ObservedMin> {
    match v {
        Place::Infinite => {
            let b = rat_to_f64(beta);
            let m = alpha
                .orbit
                .complex_conjugates()
                .into_iter()
                .map(|z| (z - b).norm())
                .fold(f64::INFINITY, f64::min);
            if m == 0.0 {
                return Err(Error::BetaIsConjugate);
            }
            Ok(ObservedMin { value: m.ln(), exact: true })
        }
        Place::Finite(p) => {
            let lp = (p as f64).ln();
            // all conjugates share ord_p(alpha); only a tie with ord_p(beta)
            // needs more than the two valuations
            let va = alpha.representative().ord(p);
            if beta.is_zero() {
                return Ok(ObservedMin { value: -rat_to_f64(&va) * lp, exact: true });
            }
            let vb = Rational::from_integer(ord_p(beta, p).into());
            if va != vb {
                return Ok(ObservedMin { value: -rat_to_f64(&va.min(vb)) * lp, exact: true });
            }
            if alpha.degree() <= POLYGON_DEGREE_CAP {
                let f = orbit_minpoly(&alpha.orbit, DEFAULT_DEGREE_CAP)?;
                let shifted = f.taylor_shift(beta);
                if shifted.coeff(0).is_zero() {
                    return Err(Error::BetaIsConjugate);
                }
                let top = newton_polygon_root_valuations(&shifted, p).into_iter().max().expect("positive degree");
                return Ok(ObservedMin { value: -rat_to_f64(&top) * lp, exact: true });
            }
            // every ord_p(sigma alpha - beta) is at least w and they sum to
            // ord_p N, so none exceeds ord_p N - (deg - 1) w
            let w = vb;
            let deg = alpha.degree() as i64;
            let total = Rational::from_integer(norm_valuation(alpha, beta, p)?.into());
            let extra = &total - &w * Rational::from_integer(deg.into());
            let top = &w + &extra;
            Ok(ObservedMin { value: -rat_to_f64(&top) * lp, exact: extra.is_zero() })
        }
    }
}

/// Check `min_sigma log|sigma(alpha) - beta|_v > -C2 (h(beta) + 1) log deg`.
/// The caller certifies that beta is not preperiodic.
pub fn distance_lower_bound(g: &Semigroup, beta: &Rational, alpha: &PreperOrbit, v: Place) -> Result<DistanceBound> {
    let degree = alpha.degree();
    if degree < 2 {
        return Err(Error::DegenerateDegree);
    }
    let cert = DistanceBoundCert::new(g, v);
    let bound = cert.c2 * (height_rational(beta) + 1.0) * (degree as f64).ln();
    let obs = observed_min_distance(alpha, beta, v)?;
    Ok(DistanceBound {
        v,
        degree,
        mq: alpha.structure.m * alpha.structure.q,
        bound,
        observed_min: obs.value,
        exact: obs.exact,
        ok: obs.value > -bound,
        cert,
    })
}

/// `1 + sum phi(p^n)` over `n >= 1` with `p^{-1/(p^{n-1}(p-1))} < eps`.
pub fn u_epsilon(p: u64, eps: f64) -> Result<u64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidConfig("eps must lie in (0, 1)".into()));
    }
    if !crate::ntcore::arith::is_prime_u64(p) {
        return Err(Error::InvalidConfig(format!("{p} is not prime")));
    }
    let lp = (p as f64).ln();
    let mut count: u64 = 1;
    let mut pn: u64 = 1; // p^{n-1}
    loop {
        let phi = pn * (p - 1);
        if (-lp / phi as f64).exp() >= eps {
            return Ok(count);
        }
        count = count
            .checked_add(phi)
            .ok_or_else(|| Error::InvalidConfig("U(eps) overflows".into()))?;
        pn = pn
            .checked_mul(p)
            .ok_or_else(|| Error::InvalidConfig("U(eps) overflows".into()))?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::{rat, rat_int};
    use crate::preper::enumerate_preperiodic;
    use crate::preper::orbit::galois_orbit;
    use crate::preper::structure::{collision_binomial, structure_decompose};
    use crate::preper::Witness;
    use crate::semigroup::{Angle, RadicalPoint, Word};

    fn orbit_of(g: &Semigroup, w: Vec<usize>, m: usize, x: RadicalPoint) -> PreperOrbit {
        let word = Word(w);
        let cb = collision_binomial(g, &word, m).unwrap();
        let structure = structure_decompose(&cb, g, &x).unwrap();
        PreperOrbit { orbit: galois_orbit(&x).unwrap(), witness: Witness { word, m }, binomial: cb, structure }
    }

    #[test]
    fn examples() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let e = enumerate_preperiodic(&g, 2).unwrap();
        let mh = e.orbits.iter().find(|o| o.representative().t() == Angle::HALF).unwrap();
        assert_eq!(mh.degree(), 1);
        assert_eq!(distance_lower_bound(&g, &rat_int(3), mh, Place::Infinite), Err(Error::DegenerateDegree));
        assert!((observed_min_distance(mh, &rat_int(3), Place::Infinite).unwrap().value - 3.5f64.ln()).abs() < 1e-15);

        // fixed points of 24 z^6 are the roots of X^5 - 1/24
        let g = Semigroup::from_triples(&[(24, 1, 6)]).unwrap();
        let x = RadicalPoint::new(rat(1, 24), 5, Angle::ZERO).unwrap();
        let o = orbit_of(&g, vec![0], 0, x);
        assert_eq!(o.degree(), 5);
        let d = distance_lower_bound(&g, &rat_int(2), &o, Place::Infinite).unwrap();
        let want = o
            .orbit
            .complex_conjugates()
            .iter()
            .map(|z| (z - 2.0).norm().ln())
            .fold(f64::INFINITY, f64::min);
        assert!((d.observed_min - want).abs() < 1e-12);
        assert!(d.ok);
        assert_eq!(d.cert.c2, d.cert.assembled());
        // ord_2(alpha) = -3/5 < ord_2(2) = 1, so every |sigma alpha - 2|_2 = 2^{3/5}
        let d2 = distance_lower_bound(&g, &rat_int(2), &o, Place::Finite(2)).unwrap();
        assert!((d2.observed_min - 0.6 * 2f64.ln()).abs() < 1e-12);
        assert!(d2.ok);
    }

    #[test]
    fn polygon_branch() {
        // alpha = i, beta = 1: ord_2(i - 1) = 1/2
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let i = RadicalPoint::root_of_unity(Angle::new(1, 4));
        let o = orbit_of(&g, vec![0, 0, 0], 1, i);
        let d = observed_min_distance(&o, &rat_int(1), Place::Finite(2)).unwrap();
        assert!((d.value + 0.5 * 2f64.ln()).abs() < 1e-15 && d.exact);
        assert_eq!(observed_min_distance(&o, &rat_int(1), Place::Finite(3)).unwrap().value, 0.0);
        // norm route: N(i - 1) = 2, so ord_2 of the pair sums to 1
        assert_eq!(norm_valuation(&o, &rat_int(1), 2).unwrap(), 1);
    }

    fn u_brute(p: u64, eps: f64) -> u64 {
        // |1 - xi|_p for xi of exact order p^n is p^{-1/phi(p^n)}
        let mut count = 1;
        for n in 1..40u32 {
            let phi = p.pow(n - 1) * (p - 1);
            if (p as f64).powf(-1.0 / phi as f64) < eps {
                count += phi;
            }
            if phi > 1 << 40 {
                break;
            }
        }
        count
    }

    #[test]
    fn u_values() {
        assert_eq!(u_epsilon(2, 0.8).unwrap(), 4);
        assert_eq!(u_epsilon(3, 0.2).unwrap(), 1);
        let mut prev = 0;
        for k in 1..100 {
            let eps = k as f64 / 100.0;
            let u = u_epsilon(2, eps).unwrap();
            assert!(u >= prev);
            prev = u;
            for p in [2u64, 3, 5, 7] {
                assert_eq!(u_epsilon(p, eps).unwrap(), u_brute(p, eps));
            }
        }
    }
}
