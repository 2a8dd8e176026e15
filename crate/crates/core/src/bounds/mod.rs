//! Explicit constants: linear forms in logarithms, test functions,
//! discrepancy and disc counts, distance to preperiodic points, and the
//! roots-of-unity count U(eps).

pub mod distance;
pub mod equid;

pub use distance::{distance_lower_bound, observed_min_distance, u_epsilon, DistanceBound, DistanceBoundCert, ObservedMin};
pub use equid::{
    arc_measure, disc_count_check, disc_count_excess, discrepancy_brute_force, discrepancy_on_circle,
    discrepancy_on_circle_exact, test_function_energy, test_function_lipschitz, DiscCount,
};

use crate::error::{Error, Result};
use crate::ntcore::rational::{ln_abs_rational, ord_p, rat_int, rat_pow, Rational};
use crate::ntcore::{height_rational, Place};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::E;

/// `12 d (16 e d)^{3n+2} max(1, log d)^2`.
pub fn c1_linear_forms(n: u32, d: u32) -> f64 {
    let d = d.max(1) as f64;
    let l = d.ln().max(1.0);
    12.0 * d * (16.0 * E * d).powi(3 * n as i32 + 2) * l * l
}

/// The floor `2 / (d (log 3d)^3)` in the theta product.
pub fn theta_floor(d: u32) -> f64 {
    let d = d.max(1) as f64;
    2.0 / (d * (3.0 * d).ln().powi(3))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theta {
    pub value: f64,
    pub floor: f64,
    /// Number of factors where the floor exceeds the height.
    pub floor_binds: usize,
}

pub fn theta_detail(alphas: &[Rational], d: u32) -> Result<Theta> {
    let floor = theta_floor(d);
    let mut value = 1.0;
    let mut floor_binds = 0;
    for a in alphas {
        if a.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let h = height_rational(a);
        if floor > h {
            floor_binds += 1;
        }
        value *= h.max(floor);
    }
    Ok(Theta { value, floor, floor_binds })
}

pub fn theta(alphas: &[Rational], d: u32) -> Result<f64> {
    Ok(theta_detail(alphas, d)?.value)
}

/// `prod alpha_i^{b_i} - 1` at a place of Q.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinFormInstance {
    #[serde(serialize_with = "ser_rats")]
    pub alphas: Vec<Rational>,
    pub bs: Vec<i64>,
    pub v: Place,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl LinFormInstance {
    pub fn new(alphas: Vec<Rational>, bs: Vec<i64>, v: Place) -> Result<Self> {
        if alphas.len() != bs.len() || alphas.is_empty() {
            return Err(Error::InvalidConfig("alphas and bs must have equal nonzero length".into()));
        }
        if alphas.iter().any(|a| a.is_zero()) {
            return Err(Error::ZeroAlpha);
        }
        if bs.iter().all(|&b| b == 0) {
            return Err(Error::InvalidConfig("exponents are all zero".into()));
        }
        Ok(LinFormInstance { alphas, bs, v })
    }

    pub fn lambda(&self) -> Rational {
        let mut p = Rational::one();
        for (a, &b) in self.alphas.iter().zip(&self.bs) {
            p *= rat_pow(a, b);
        }
        p - rat_int(1)
    }

    /// `B = max(3, |b_i|)`.
    pub fn b_max(&self) -> u64 {
        self.bs.iter().map(|b| b.unsigned_abs()).max().unwrap_or(0).max(3)
    }

    /// `log |Lambda|_v`; errors with `LambdaZero` when the form vanishes.
    pub fn log_lambda(&self) -> Result<f64> {
        let l = self.lambda();
        if l.is_zero() {
            return Err(Error::LambdaZero);
        }
        Ok(match self.v {
            Place::Infinite => ln_abs_rational(&l),
            // + 0.0 turns -0.0 into 0.0
            Place::Finite(p) => -(ord_p(&l, p) as f64) * (p as f64).ln() + 0.0,
        })
    }
}

/// `-c1(n, 1) N(v)/log N(v) Theta log B` over Q.
pub fn linform_bound(inst: &LinFormInstance) -> Result<f64> {
    if inst.lambda().is_zero() {
        return Err(Error::LambdaZero);
    }
    let nv = inst.v.norm() as f64;
    let th = theta(&inst.alphas, 1)?;
    Ok(-c1_linear_forms(inst.alphas.len() as u32, 1) * nv / nv.ln() * th * (inst.b_max() as f64).ln())
}

pub fn verify_linform(inst: &LinFormInstance) -> Result<bool> {
    Ok(inst.log_lambda()? > linform_bound(inst)?)
}

/// One CSV row of the verification harness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinFormRow {
    pub id: u64,
    pub v: Place,
    pub log_lambda: f64,
    pub bound: f64,
    pub margin: f64,
    pub floor_binds: bool,
}

pub fn linform_row(id: u64, inst: &LinFormInstance) -> Result<LinFormRow> {
    let log_lambda = inst.log_lambda()?;
    let bound = linform_bound(inst)?;
    Ok(LinFormRow {
        id,
        v: inst.v,
        log_lambda,
        bound,
        margin: log_lambda - bound,
        floor_binds: theta_detail(&inst.alphas, 1)?.floor_binds > 0,
    })
}

/// Fixed pool for random instances.
pub fn linform_pool() -> Vec<Rational> {
    [(2, 1), (3, 1), (5, 1), (3, 2), (2, 3), (5, 4), (7, 3), (-2, 1), (-1, 2), (9, 8), (10, 9), (6, 5), (-7, 5), (11, 2), (4, 3), (15, 14)]
        .iter()
        .map(|&(n, d)| crate::ntcore::rational::rat(n, d))
        .collect()
}

/// Instance `id` of the random harness: the stream of a ChaCha8 generator
/// seeded by `seed` is selected by `id`, so instances are independent of
/// evaluation order.
pub fn random_linform_instance(seed: u64, id: u64, pool: &[Rational], places: &[Place]) -> LinFormInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    loop {
        let n = rng.gen_range(1..=3usize);
        let alphas: Vec<Rational> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let bs: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
        let v = places[rng.gen_range(0..places.len())];
        if let Ok(inst) = LinFormInstance::new(alphas, bs, v) {
            if !inst.lambda().is_zero() {
                return inst;
            }
        }
    }
}

/// Run `count` random nonzero instances in parallel.
pub fn linform_harness(seed: u64, count: u64) -> Result<Vec<LinFormRow>> {
    let pool = linform_pool();
    let places = [Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(5)];
    (0..count)
        .into_par_iter()
        .map(|id| linform_row(id, &random_linform_instance(seed, id, &pool, &places)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat;

    #[test]
    fn c1_values() {
        let k = 16.0 * E;
        assert!((c1_linear_forms(1, 1) / (12.0 * k.powi(5)) - 1.0).abs() < 1e-14);
        assert!((c1_linear_forms(2, 1) / (12.0 * k.powi(8)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn theta_values() {
        let fl = 2.0 / 3f64.ln().powi(3);
        assert!((theta_floor(1) - fl).abs() < 1e-15);
        assert!((fl - 1.50833).abs() < 1e-5);
        assert_eq!(theta(&[rat_int(2)], 1).unwrap(), fl);
        assert_eq!(theta(&[rat_int(1)], 1).unwrap(), fl);
        assert_eq!(theta(&[rat_int(2), rat_int(3)], 1).unwrap(), fl * fl);
        assert_eq!(theta(&[rat_int(0)], 1), Err(Error::ZeroAlpha));
        let t = theta_detail(&[rat_int(2), rat_int(7)], 1).unwrap();
        assert_eq!(t.floor_binds, 1);
        assert!((t.value - fl * 7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn linform_examples() {
        let i = LinFormInstance::new(vec![rat_int(2)], vec![1], Place::Infinite).unwrap();
        assert_eq!(i.lambda(), rat_int(1));
        assert!(verify_linform(&i).unwrap());
        let i = LinFormInstance::new(vec![rat(3, 2)], vec![7], Place::Infinite).unwrap();
        assert_eq!(i.lambda(), rat(2059, 128));
        assert!(verify_linform(&i).unwrap());
        let i = LinFormInstance::new(vec![rat_int(2)], vec![-1], Place::Finite(3)).unwrap();
        assert_eq!(i.lambda(), rat(-1, 2));
        assert_eq!(i.log_lambda().unwrap(), 0.0);
        assert!(verify_linform(&i).unwrap());
        let z = LinFormInstance::new(vec![rat_int(4), rat_int(2)], vec![1, -2], Place::Infinite).unwrap();
        assert_eq!(verify_linform(&z), Err(Error::LambdaZero));
    }

    #[test]
    fn harness_is_deterministic() {
        let a = linform_harness(7, 50).unwrap();
        let b = linform_harness(7, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.margin > 0.0));
    }
}
