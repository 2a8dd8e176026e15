//! S-integrality scans of enumerated preperiodic points relative to a
//! non-preperiodic rational.

pub mod gamma;
pub mod integrality;

pub use gamma::{gamma_decomposition, gamma_sum, GammaCertificate, GammaDecomposition, GammaRow, GammaSum};
pub use integrality::{bad_primes, is_s_integral, meets_at_prime, BadPrimes};

use crate::bounds::{discrepancy_on_circle_exact, distance_lower_bound};
use crate::error::{Error, Result};
use crate::ntcore::arith::factor_biguint;
use crate::ntcore::rational::{ord_p, rat_to_f64, serde_rational, Rational};
use crate::ntcore::{factor_rational, Place, DEFAULT_DEGREE_CAP};
use crate::preper::{enumerate_preperiodic_capped, PreperOrbit};
use crate::semigroup::{is_preperiodic, Certificate, PreperStatus, RadicalPoint, Semigroup, DEFAULT_NODE_CAP};
use integrality::{meeting_norm, norm_is_s_unit};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "monodyn/1";

pub const REPORT_NOTE: &str = "The uniform bound on S-integral preperiodic points is far beyond desk scale; \
finiteness is shown here only by counts that stop growing with word length.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub quadrature_nodes: usize,
    pub tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quadrature_nodes: 1 << 16, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub node_cap: usize,
    pub degree_cap: usize,
    pub root_cap: usize,
    /// Depth of the orbit tree used to certify beta.
    pub certificate_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            node_cap: DEFAULT_NODE_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            root_cap: crate::preper::enumerate::DEFAULT_ROOT_CAP,
            certificate_depth: 8,
        }
    }
}

fn default_s() -> Vec<Place> {
    vec![Place::Infinite]
}

fn default_wordlen() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    #[serde(flatten)]
    pub semigroup: Semigroup,
    #[serde(rename = "S", default = "default_s")]
    pub s: Vec<Place>,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(default = "default_wordlen")]
    pub max_wordlen: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub caps: Caps,
}

impl ScanConfig {
    pub fn new(semigroup: Semigroup, s: Vec<Place>, beta: Rational, max_wordlen: usize) -> Result<Self> {
        let c = ScanConfig { semigroup, s, beta, max_wordlen, tolerances: Tolerances::default(), caps: Caps::default() };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: ScanConfig = serde_json::from_str(s).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.contains(&Place::Infinite) {
            return Err(Error::InvalidConfig("S must contain inf".into()));
        }
        if self.beta.is_zero() {
            return Err(Error::InvalidConfig("beta must be nonzero".into()));
        }
        if self.max_wordlen == 0 {
            return Err(Error::DepthNonPositive);
        }
        if !(self.tolerances.tol > 0.0) || self.tolerances.quadrature_nodes < 16 {
            return Err(Error::InvalidConfig("bad tolerances".into()));
        }
        Ok(())
    }

    fn finite_s(&self) -> Vec<u64> {
        self.s.iter().filter_map(|v| if let Place::Finite(p) = v { Some(*p) } else { None }).collect()
    }
}

/// Certify that beta is not preperiodic; anything else refuses the scan.
pub fn certify_beta(g: &Semigroup, beta: &Rational, depth: usize) -> Result<Certificate> {
    let x = RadicalPoint::from_rational(beta)?;
    match is_preperiodic(g, &x, depth)? {
        PreperStatus::NotPreperiodic { certificate } => Ok(certificate),
        PreperStatus::Preperiodic { word, m } => Err(Error::BetaNotCertified(format!(
            "beta is preperiodic with witness {word} (prefix {m})"
        ))),
        PreperStatus::Unknown { depth } => Err(Error::BetaNotCertified(format!("undecided at depth {depth}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceCheck {
    pub v: Place,
    pub ok: bool,
    /// Degree one: the bound is trivial and reported as passing.
    pub trivial: bool,
    pub observed_min: Option<f64>,
    pub bound: Option<f64>,
    pub exact: bool,
}

/// Verdict for one Galois orbit; every conjugate shares it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointVerdict {
    pub point: RadicalPoint,
    pub degree: u64,
    pub witness: Vec<usize>,
    pub prefix: usize,
    pub bad_primes: BadPrimes,
    pub s_integral: bool,
    pub gamma_residual: f64,
    pub gamma_exact_zero: bool,
    pub decomposition_residual: Option<f64>,
    pub distance_checks: Vec<DistanceCheck>,
    pub discrepancy: f64,
    /// Number of residue classes, each an arithmetic progression of angles.
    pub progressions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthCount {
    pub wordlen: usize,
    pub orbits: usize,
    pub points: u64,
    pub s_integral_orbits: usize,
    pub s_integral_points: u64,
    /// S-integral points found up to and including this word length.
    pub cumulative_s_integral_points: u64,
}

/// 0 and infinity, fixed by every monomial map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialVerdict {
    pub point: &'static str,
    pub bad_primes: Vec<u64>,
    pub s_integral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema: &'static str,
    pub note: &'static str,
    pub config: ScanConfig,
    pub beta_certificate: Certificate,
    pub verdicts: Vec<PointVerdict>,
    pub counts: Vec<DepthCount>,
    pub stabilized: bool,
    pub s_integral_points: u64,
    pub max_s_integral_degree: u64,
    pub special_points: Vec<SpecialVerdict>,
    pub truncated: Option<String>,
}

impl ScanReport {
    /// Nonzero S-integral points with a witness of length at most `n`.
    pub fn s_integral_up_to(&self, n: usize) -> u64 {
        self.counts.iter().filter(|c| c.wordlen <= n).map(|c| c.s_integral_points).sum()
    }
}

fn special_points(beta: &Rational, s: &[u64]) -> Result<Vec<SpecialVerdict>> {
    let f = factor_rational(beta)?;
    let mut zero = vec![];
    let mut inf = vec![];
    for (p, _) in &f.exponents {
        if ord_p(beta, *p) > 0 {
            zero.push(*p);
        } else {
            inf.push(*p);
        }
    }
    let ok = |v: &Vec<u64>| v.iter().all(|p| s.contains(p));
    Ok(vec![
        SpecialVerdict { point: "0", s_integral: ok(&zero), bad_primes: zero },
        SpecialVerdict { point: "inf", s_integral: ok(&inf), bad_primes: inf },
    ])
}

fn verdict(cfg: &ScanConfig, o: &PreperOrbit) -> Result<PointVerdict> {
    let beta = &cfg.beta;
    let f = meeting_norm(&o.orbit, beta)?;
    let s_integral = norm_is_s_unit(&f, &cfg.s);
    let fac = factor_biguint(f.magnitude(), integrality::BAD_PRIME_BUDGET);
    let bad = BadPrimes::from_factorization(&fac);
    let gs = gamma::gamma_sum_with_norm(&o.orbit, beta, &f, &fac)?;
    let decomposition_residual = if s_integral {
        Some(gamma::gamma_decomposition_with_norm(&o.orbit, beta, &cfg.s, &f)?.residual)
    } else {
        None
    };
    let mut distance_checks = Vec::with_capacity(cfg.s.len());
    for &v in &cfg.s {
        match distance_lower_bound(&cfg.semigroup, beta, o, v) {
            Ok(d) => distance_checks.push(DistanceCheck {
                v,
                ok: d.ok,
                trivial: false,
                observed_min: Some(d.observed_min),
                bound: Some(d.bound),
                exact: d.exact,
            }),
            Err(Error::DegenerateDegree) => distance_checks.push(DistanceCheck {
                v,
                ok: true,
                trivial: true,
                observed_min: None,
                bound: None,
                exact: true,
            }),
            Err(e) => return Err(e),
        }
    }
    let angles: Vec<Rational> = o.orbit.angles().into_iter().map(|a| a.to_rational()).collect();
    let discrepancy = rat_to_f64(&discrepancy_on_circle_exact(&angles)?);
    Ok(PointVerdict {
        point: o.representative().clone(),
        degree: o.degree(),
        witness: o.witness.word.one_based(),
        prefix: o.witness.m,
        bad_primes: bad,
        s_integral,
        gamma_residual: gs.residual,
        gamma_exact_zero: gs.certificate.exact_zero,
        decomposition_residual,
        distance_checks,
        discrepancy,
        progressions: o.orbit.residues.len(),
    })
}

fn counts(n_max: usize, orbits: &[PreperOrbit], verdicts: &[PointVerdict]) -> Vec<DepthCount> {
    let mut out: Vec<DepthCount> = (1..=n_max)
        .map(|wordlen| DepthCount {
            wordlen,
            orbits: 0,
            points: 0,
            s_integral_orbits: 0,
            s_integral_points: 0,
            cumulative_s_integral_points: 0,
        })
        .collect();
    for (o, v) in orbits.iter().zip(verdicts) {
        let c = &mut out[o.witness.word.len() - 1];
        c.orbits += 1;
        c.points += v.degree;
        if v.s_integral {
            c.s_integral_orbits += 1;
            c.s_integral_points += v.degree;
        }
    }
    let mut acc = 0;
    for c in &mut out {
        acc += c.s_integral_points;
        c.cumulative_s_integral_points = acc;
    }
    out
}

/// Enumerate, judge every orbit, and summarize by word length.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let g = &cfg.semigroup;
    let beta_certificate = certify_beta(g, &cfg.beta, cfg.caps.certificate_depth)?;
    let special = special_points(&cfg.beta, &cfg.finite_s())?;

    // a cap hit at depth n leaves the complete scan at depth n - 1
    let mut depth = cfg.max_wordlen;
    let mut truncated = None;
    let enumeration = loop {
        match enumerate_preperiodic_capped(g, depth, cfg.caps.root_cap) {
            Ok(e) => break e,
            Err(Error::EnumerationCap { cap }) if depth > 1 => {
                truncated = Some(format!("root cap {cap} reached at word length {depth}"));
                depth -= 1;
            }
            Err(e) => return Err(e),
        }
    };

    let verdicts: Vec<PointVerdict> = enumeration
        .orbits
        .par_iter()
        .map(|o| verdict(cfg, o))
        .collect::<Result<_>>()?;
    let counts = counts(depth, &enumeration.orbits, &verdicts);
    let mut order: Vec<usize> = (0..verdicts.len()).collect();
    order.sort_by(|&a, &b| verdicts[a].degree.cmp(&verdicts[b].degree).then_with(|| verdicts[a].point.cmp(&verdicts[b].point)));
    let mut slots: Vec<Option<PointVerdict>> = verdicts.into_iter().map(Some).collect();
    let verdicts: Vec<PointVerdict> = order.into_iter().map(|i| slots[i].take().expect("each index once")).collect();

    let stabilized = depth >= 2 && counts[depth - 1].s_integral_points == 0;
    let s_integral_points = verdicts.iter().filter(|v| v.s_integral).map(|v| v.degree).sum();
    let max_s_integral_degree = verdicts.iter().filter(|v| v.s_integral).map(|v| v.degree).max().unwrap_or(0);
    let mut config = cfg.clone();
    config.max_wordlen = depth;
    Ok(ScanReport {
        schema: SCHEMA,
        note: REPORT_NOTE,
        config,
        beta_certificate,
        verdicts,
        counts,
        stabilized,
        s_integral_points,
        max_s_integral_degree,
        special_points: special,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::rational::rat_int;

    #[test]
    fn config_json() {
        let c = ScanConfig::from_json(r#"{"generators":[{"a":"2","d":2}],"S":["inf",2,"3"],"beta":"3","max_wordlen":3}"#).unwrap();
        assert_eq!(c.s, vec![Place::Infinite, Place::Finite(2), Place::Finite(3)]);
        assert_eq!(c.caps, Caps::default());
        assert!(ScanConfig::from_json(r#"{"generators":[{"a":"2","d":2}],"S":[2],"beta":"3"}"#).is_err());
        assert!(ScanConfig::from_json(r#"{"generators":[{"a":"2","d":2}],"beta":"0"}"#).is_err());
    }

    #[test]
    fn power_map_scan() {
        let g = Semigroup::from_triples(&[(1, 1, 2)]).unwrap();
        let cfg = ScanConfig::new(g, vec![Place::Infinite], rat_int(2), 4).unwrap();
        let r = run_scan(&cfg).unwrap();
        // 1 is the only root of unity with Phi_n(2) = +-1
        let s: Vec<_> = r.verdicts.iter().filter(|v| v.s_integral).collect();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].point, RadicalPoint::from_rational(&rat_int(1)).unwrap());
        let minus_one = r.verdicts.iter().find(|v| v.point == RadicalPoint::from_rational(&rat_int(-1)).unwrap()).unwrap();
        assert_eq!(minus_one.bad_primes.primes, vec![3]);
        assert!(r.stabilized);
        assert!(r.verdicts.iter().all(|v| v.gamma_exact_zero && v.gamma_residual < 1e-9));
    }

    #[test]
    fn conjugated_scan() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let s = vec![Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(5)];
        let r = run_scan(&ScanConfig::new(g, s, rat_int(3), 4).unwrap()).unwrap();
        let half = RadicalPoint::from_rational(&crate::ntcore::rational::rat(1, 2)).unwrap();
        assert!(r.verdicts.iter().any(|v| v.point == half && v.s_integral));
        assert!(r.stabilized);
        assert!(r.verdicts.iter().all(|v| v.distance_checks.iter().all(|d| d.ok)));
    }

    #[test]
    fn refuses_preperiodic_beta() {
        let g = Semigroup::from_triples(&[(2, 1, 2)]).unwrap();
        let cfg = ScanConfig::new(g, vec![Place::Infinite], crate::ntcore::rational::rat(1, 2), 2).unwrap();
        assert!(matches!(run_scan(&cfg), Err(Error::BetaNotCertified(_))));
    }
}
