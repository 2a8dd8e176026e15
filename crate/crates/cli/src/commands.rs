use crate::output;
use crate::{Cli, Cmd, Format, Global};
use monodyn::bounds::{discrepancy_on_circle_exact, linform_harness, linform_row, LinFormInstance, LinFormRow};
use monodyn::heights::{
    canonical_height_closed, canonical_height_iterative, equilibrium_radius, jensen_check, EquilibriumRadius,
    HeightEstimate, JensenResult, SequenceSpec,
};
use monodyn::ntcore::rational::rat_to_f64;
use monodyn::ntcore::{factor_poly, factor_rational, parse_rational, poly::parse_poly_json, DEFAULT_DEGREE_CAP};
use monodyn::preper::{enumerate_preperiodic_capped, Enumeration, PreperRecord};
use monodyn::scan::{run_scan, Caps, ScanConfig, ScanReport};
use monodyn::semigroup::{is_preperiodic, orbit_tree, Angle, PreperStatus, RadicalPoint, Semigroup, Word};
use monodyn::{Error, Place, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: m.into() }
    }

    pub fn io(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: m.into() }
    }

    fn invariant(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INVARIANT, message: m.into() }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TreeSizeCap { .. }
        | Error::EnumerationCap { .. }
        | Error::DegreeCapExceeded { .. }
        | Error::OverflowGuard { .. } => EXIT_CAP,
        Error::InvariantViolation(_) | Error::RootIsolationFailure | Error::SeparationFailure => EXIT_INVARIANT,
        _ => EXIT_INVALID,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

type Res<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> Res<()> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0) {
            return Err(CliError::invalid("--tol must be positive"));
        }
    }
    if g.depth == Some(0) {
        return Err(Error::DepthNonPositive.into());
    }
    match &cli.cmd {
        Cmd::Orbit { point } => orbit(g, point),
        Cmd::Preper => preper(g),
        Cmd::Height { beta, preperiod, period, nodes } => height(g, beta, preperiod, period, *nodes),
        Cmd::Bounds { count, alphas, bs, place } => bounds(g, *count, alphas.as_deref(), bs.as_deref(), place),
        Cmd::Equid { binomial } => equid(g, binomial.as_deref()),
        Cmd::Scan => scan(g),
        Cmd::Factor { value } => factor(g, value),
    }
}

fn read_config(g: &Global) -> Res<String> {
    let p = g.config.as_ref().ok_or_else(|| CliError::invalid("--config is required"))?;
    std::fs::read_to_string(p).map_err(|e| CliError::invalid(format!("{}: {e}", p.display())))
}

fn semigroup(g: &Global) -> Res<Semigroup> {
    Ok(Semigroup::from_json(&read_config(g)?)?)
}

#[derive(Deserialize)]
struct CapsOnly {
    #[serde(default)]
    caps: Caps,
}

/// The semigroup and the optional `caps` block of the config.
fn semigroup_and_caps(g: &Global) -> Res<(Semigroup, Caps)> {
    let text = read_config(g)?;
    let caps: CapsOnly = serde_json::from_str(&text).map_err(|e| CliError::invalid(e.to_string()))?;
    Ok((Semigroup::from_json(&text)?, caps.caps))
}

fn out(g: &Global) -> Option<&Path> {
    g.out.as_deref()
}

pub fn parse_point(s: &str) -> Res<RadicalPoint> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [c] => Ok(RadicalPoint::from_rational(&parse_rational(c)?)?),
        [c, m, t] => {
            let m: u64 = m.parse().map_err(|_| CliError::invalid(format!("bad root index {m:?}")))?;
            let t = Angle::from_rational(&parse_rational(t)?)?;
            Ok(RadicalPoint::new(parse_rational(c)?, m, t)?)
        }
        _ => Err(CliError::invalid("point must be `c` or `c,M,t`")),
    }
}

fn parse_list(s: &str) -> Res<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim()).map_err(CliError::from)).collect()
}

#[derive(Serialize)]
struct OrbitOut {
    point: RadicalPoint,
    depth: usize,
    status: PreperStatus,
    nodes: Vec<monodyn::semigroup::OrbitNode>,
}

#[derive(Serialize)]
struct OrbitRow {
    word: String,
    c: String,
    #[serde(rename = "M")]
    m: u64,
    t: String,
}

fn orbit(g: &Global, point: &str) -> Res<()> {
    let (sg, caps) = semigroup_and_caps(g)?;
    let x = parse_point(point)?;
    let depth = g.depth.unwrap_or(4);
    let nodes = orbit_tree(&sg, &x, depth, caps.node_cap)?;
    let status = is_preperiodic(&sg, &x, depth)?;
    let text = match g.format {
        Format::Json => output::json(&OrbitOut { point: x, depth, status, nodes })?,
        Format::Csv => {
            let rows: Vec<OrbitRow> = nodes
                .iter()
                .map(|n| OrbitRow { word: n.word.to_string(), c: n.point.c().to_string(), m: n.point.m(), t: n.point.t().to_string() })
                .collect();
            output::csv(&rows)?
        }
    };
    output::write(out(g), &text)
}

/// Enumerate at the requested depth, falling back one word length at a
/// time when the root cap is hit. The error is returned alongside the
/// partial enumeration.
fn enumerate_partial(sg: &Semigroup, depth: usize, root_cap: usize) -> Res<(Enumeration, Option<Error>)> {
    let mut d = depth;
    let mut hit = None;
    loop {
        match enumerate_preperiodic_capped(sg, d, root_cap) {
            Ok(e) => return Ok((e, hit)),
            Err(e @ Error::EnumerationCap { .. }) if d > 1 => {
                hit.get_or_insert(e);
                d -= 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
}

#[derive(Serialize)]
struct PreperCsv {
    c: String,
    #[serde(rename = "M")]
    m: u64,
    t: String,
    witness: String,
    prefix: usize,
    degree: u64,
}

fn preper(g: &Global) -> Res<()> {
    let (sg, caps) = semigroup_and_caps(g)?;
    let (en, hit) = enumerate_partial(&sg, g.depth.unwrap_or(4), caps.root_cap)?;
    let mut records: Vec<PreperRecord> = Vec::new();
    for o in &en.orbits {
        records.extend(o.records(caps.degree_cap)?);
    }
    let text = match g.format {
        Format::Json => output::json_lines(&records)?,
        Format::Csv => {
            let rows: Vec<PreperCsv> = records
                .iter()
                .map(|r| PreperCsv {
                    c: r.c.clone(),
                    m: r.m,
                    t: r.t.clone(),
                    witness: r.witness.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
                    prefix: r.prefix,
                    degree: r.degree,
                })
                .collect();
            output::csv(&rows)?
        }
    };
    output::write(out(g), &text)?;
    match hit {
        Some(e) => Err(CliError { code: EXIT_CAP, message: format!("{e}; wrote word lengths up to {}", en.max_wordlen) }),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct HeightOut {
    beta: String,
    preperiod: Word,
    period: Word,
    iterative: HeightEstimate,
    closed_form: f64,
    difference: f64,
    equilibrium: EquilibriumRadius,
    jensen: Option<JensenResult>,
}

#[derive(Serialize)]
struct HeightCsv {
    beta: String,
    preperiod: String,
    period: String,
    iterative: f64,
    error_bound: f64,
    closed_form: f64,
    radius: f64,
}

fn height(g: &Global, beta: &str, preperiod: &str, period: &str, nodes: usize) -> Res<()> {
    let sg = semigroup(g)?;
    let beta_q = parse_rational(beta)?;
    let seq = SequenceSpec::new(preperiod.parse()?, period.parse()?)?;
    seq.validate(&sg)?;
    let tol = g.tol.unwrap_or(1e-9);
    let it = canonical_height_iterative(&sg, &seq, &beta_q, tol)?;
    let cf = canonical_height_closed(&sg, &seq.preperiod, &seq.period, &beta_q)?;
    let eq = equilibrium_radius(&sg, &seq.preperiod, &seq.period)?;
    // the check is skipped when beta sits on the circle
    let jensen = match jensen_check(eq.radius, &beta_q, nodes) {
        Ok(j) => Some(j),
        Err(Error::QuadratureSingular) => None,
        Err(e) => return Err(e.into()),
    };
    let diff = (it.value - cf).abs();
    if diff > it.error_bound + tol {
        return Err(CliError::invariant(format!(
            "closed form {cf} and iterative {} differ by more than the certified bound",
            it.value
        )));
    }
    let text = match g.format {
        Format::Json => output::json(&HeightOut {
            beta: beta_q.to_string(),
            preperiod: seq.preperiod.clone(),
            period: seq.period.clone(),
            iterative: it,
            closed_form: cf,
            difference: diff,
            equilibrium: eq,
            jensen,
        })?,
        Format::Csv => output::csv(&[HeightCsv {
            beta: beta_q.to_string(),
            preperiod: seq.preperiod.to_string(),
            period: seq.period.to_string(),
            iterative: it.value,
            error_bound: it.error_bound,
            closed_form: cf,
            radius: eq.radius,
        }])?,
    };
    output::write(out(g), &text)
}

#[derive(Serialize)]
struct LinFormCsv {
    id: u64,
    v: Place,
    log_lambda: f64,
    bound: f64,
    margin: f64,
}

fn bounds(g: &Global, count: u64, alphas: Option<&str>, bs: Option<&str>, place: &str) -> Res<()> {
    let rows: Vec<LinFormRow> = match (alphas, bs) {
        (Some(a), Some(b)) => {
            let alphas = parse_list(a)?;
            let bs = b
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::invalid(format!("bad exponent {t:?}"))))
                .collect::<Res<Vec<_>>>()?;
            let v: Place = place.parse()?;
            vec![linform_row(0, &LinFormInstance::new(alphas, bs, v)?)?]
        }
        _ => linform_harness(g.seed, count)?,
    };
    let text = match g.format {
        Format::Json => output::json(&rows)?,
        Format::Csv => output::csv(
            &rows
                .iter()
                .map(|r| LinFormCsv { id: r.id, v: r.v, log_lambda: r.log_lambda, bound: r.bound, margin: r.margin })
                .collect::<Vec<_>>(),
        )?,
    };
    output::write(out(g), &text)?;
    let failed: Vec<u64> = rows.iter().filter(|r| !(r.margin > 0.0)).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::invariant(format!("lower bound violated by instances {failed:?}")))
    }
}

#[derive(Serialize)]
struct EquidRow {
    point: String,
    degree: u64,
    discrepancy: String,
    discrepancy_f64: f64,
    progressions: usize,
    bound: f64,
    ok: bool,
}

fn equid(g: &Global, binomial: Option<&str>) -> Res<()> {
    let mut rows = Vec::new();
    let mut cap_hit = None;
    if let Some(arg) = binomial {
        let (m, c) = arg.split_once(',').ok_or_else(|| CliError::invalid("--binomial takes `M,c`"))?;
        let m: u64 = m.trim().parse().map_err(|_| CliError::invalid(format!("bad M {m:?}")))?;
        if m == 0 {
            return Err(CliError::invalid("M must be positive"));
        }
        let c = parse_rational(c.trim())?;
        if c.is_zero() {
            return Err(Error::ZeroInput.into());
        }
        // roots of X^M = c sit at angles (j + [c < 0]/2) / M
        let shift = if c.is_negative() { Rational::new(1.into(), 2.into()) } else { Rational::from_integer(0.into()) };
        let angles: Vec<Rational> = (0..m)
            .map(|j| (Rational::from_integer(j.into()) + &shift) / Rational::from_integer(m.into()))
            .collect();
        let d = discrepancy_on_circle_exact(&angles)?;
        let bound = 1.0 / m as f64;
        rows.push(EquidRow {
            point: if c.is_negative() { format!("X^{m} + {}", -&c) } else { format!("X^{m} - {c}") },
            degree: m,
            discrepancy_f64: rat_to_f64(&d),
            ok: d == Rational::new(1.into(), m.into()),
            discrepancy: d.to_string(),
            progressions: 1,
            bound,
        });
    } else {
        let (sg, caps) = semigroup_and_caps(g)?;
        let (en, hit) = enumerate_partial(&sg, g.depth.unwrap_or(4), caps.root_cap)?;
        cap_hit = hit;
        for o in &en.orbits {
            let angles: Vec<Rational> = o.orbit.angles().into_iter().map(|a| a.to_rational()).collect();
            let d = discrepancy_on_circle_exact(&angles)?;
            let k = o.orbit.residues.len();
            let n = o.degree();
            rows.push(EquidRow {
                point: o.representative().to_string(),
                degree: n,
                discrepancy_f64: rat_to_f64(&d),
                ok: d <= Rational::new((k as u64).into(), n.into()),
                discrepancy: d.to_string(),
                progressions: k,
                bound: k as f64 / n as f64,
            });
        }
    }
    let text = match g.format {
        Format::Json => output::json(&rows)?,
        Format::Csv => output::csv(&rows)?,
    };
    output::write(out(g), &text)?;
    if let Some(r) = rows.iter().find(|r| !r.ok) {
        return Err(CliError::invariant(format!("discrepancy bound fails at {}", r.point)));
    }
    match cap_hit {
        Some(e) => Err(CliError { code: EXIT_CAP, message: e.to_string() }),
        None => Ok(()),
    }
}

fn scan_violations(r: &ScanReport, tol: f64) -> Vec<String> {
    let mut v = Vec::new();
    for p in &r.verdicts {
        if !p.gamma_exact_zero {
            v.push(format!("{}: exact Gamma certificate failed", p.point));
        }
        if !(p.gamma_residual < tol) {
            v.push(format!("{}: Gamma residual {}", p.point, p.gamma_residual));
        }
        if let Some(d) = p.decomposition_residual {
            if !(d < tol) {
                v.push(format!("{}: decomposition residual {d}", p.point));
            }
        }
        for c in p.distance_checks.iter().filter(|c| !c.ok) {
            v.push(format!("{}: distance bound fails at {}", p.point, c.v));
        }
    }
    v
}

fn scan(g: &Global) -> Res<()> {
    let mut cfg = ScanConfig::from_json(&read_config(g)?)?;
    if let Some(d) = g.depth {
        cfg.max_wordlen = d;
    }
    if let Some(t) = g.tol {
        cfg.tolerances.tol = t;
    }
    cfg.validate()?;
    let report = run_scan(&cfg)?;
    let text = match g.format {
        Format::Json => output::json(&report)?,
        Format::Csv => output::csv(&report.counts)?,
    };
    output::write(out(g), &text)?;
    let bad = scan_violations(&report, cfg.tolerances.tol);
    if !bad.is_empty() {
        return Err(CliError::invariant(bad.join("; ")));
    }
    match &report.truncated {
        Some(t) => Err(CliError { code: EXIT_CAP, message: t.clone() }),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct FactorRow {
    factor: String,
    multiplicity: i64,
}

fn factor(g: &Global, value: &str) -> Res<()> {
    let v = value.trim();
    let (content, rows) = if v.starts_with('[') {
        let f = parse_poly_json(v)?;
        let fac = factor_poly(&f, DEFAULT_DEGREE_CAP)?;
        let rows: Vec<FactorRow> = fac
            .factors
            .iter()
            .map(|(p, m)| FactorRow { factor: p.to_string(), multiplicity: *m as i64 })
            .collect();
        (fac.content.to_string(), rows)
    } else {
        let x = parse_rational(v)?;
        let fac = factor_rational(&x)?;
        let rows = fac.exponents.iter().map(|&(p, e)| FactorRow { factor: p.to_string(), multiplicity: e }).collect();
        ((if fac.sign < 0 { "-1" } else { "1" }).to_string(), rows)
    };
    #[derive(Serialize)]
    struct FactorOut<'a> {
        unit: String,
        factors: &'a [FactorRow],
    }
    let text = match g.format {
        Format::Json => output::json(&FactorOut { unit: content, factors: &rows })?,
        Format::Csv => output::csv(&rows)?,
    };
    output::write(out(g), &text)
}
