//! Run configuration, the `verify`, `gauge` and `selftest` commands, and
//! their JSON reports.
//!
//! A report is one JSON object with keys in a fixed order and every float
//! written with 17 significant digits. Two runs with the same configuration
//! produce identical documents apart from the trailing `timing` object.

pub mod checks;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Number, Value};

use crate::algebra::{GrassmannAlgebra, Quaternion};
use crate::bundle::Case;
use crate::error::{Error, Result};
use crate::gauge::connection::sample_tangents;
use crate::gauge::orbit::{graded_element, random_unitary};
use crate::gauge::{
    charge, dimension_check, gl_transform, inequivalent, instanton_family, su_transform, CaseMatrix, ChargeOptions,
    ChargeReport, GaugeElement, OrbitReport, ProjectorCase, TransformKind,
};
use crate::supermatrix::GradedMatrix;

pub use checks::Check;

/// Value of the `schema` field of every report.
pub const SCHEMA: &str = "hopf-gauge-report/1";

pub const MIN_ORDER: usize = 4;

const PROJECTOR_SAMPLES: usize = 1000;
const CONNECTION_SAMPLES: usize = 300;
const GAUGE_SAMPLES: usize = 50;
const ALGEBRA_SAMPLES: usize = 500;
const FORM_SAMPLES: usize = 500;
const SUPERGROUP_SAMPLES: usize = 100;
const CONVERGENCE_TOL: f64 = 1e-6;
const ORBIT_TOL: f64 = 1e-11;
const GAUGE_CHARGE_TOL: f64 = 1e-5;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseSelector {
    Monopole,
    Graded,
    Instanton,
    All,
}

impl CaseSelector {
    pub fn cases(self) -> Vec<Case> {
        match self {
            CaseSelector::Monopole => vec![Case::Monopole],
            CaseSelector::Graded => vec![Case::Graded],
            CaseSelector::Instanton => vec![Case::Instanton],
            CaseSelector::All => Case::ALL.to_vec(),
        }
    }
}

impl FromStr for CaseSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CaseSelector::All),
            other => match Case::from_str(other) {
                Ok(Case::Monopole) => Ok(CaseSelector::Monopole),
                Ok(Case::Graded) => Ok(CaseSelector::Graded),
                Ok(Case::Instanton) => Ok(CaseSelector::Instanton),
                Err(_) => usage(format!("unknown case `{other}` (expected monopole, graded, instanton or all)")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub case: CaseSelector,
    /// Restrict `verify` to the transposed projectors `q`.
    pub transposed: bool,
    pub s2_order: usize,
    pub s4_order: usize,
    /// Charge tolerance; defaults are 1e-8 on `S²`, 1e-6 on `S⁴` and 1e-5
    /// for charges after a gauge transformation.
    pub tol: Option<f64>,
    pub grassmann_l: usize,
    pub seed: u64,
    /// Overrides every sample count of the selected command.
    pub samples: Option<usize>,
    pub report: Option<PathBuf>,
    /// Flat real parameters of a gauge element.
    pub g: Option<Vec<f64>>,
    /// `λ c₁ c₂ c₃ c₄` of the conformal family.
    pub family: Option<[f64; 5]>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            case: CaseSelector::All,
            transposed: false,
            s2_order: 32,
            s4_order: 24,
            tol: None,
            grassmann_l: 2,
            seed: 0,
            samples: None,
            report: None,
            g: None,
            family: None,
        }
    }
}

/// Partial configuration, from a `key = value` file or from flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigPatch {
    pub case: Option<CaseSelector>,
    pub transposed: Option<bool>,
    pub s2_order: Option<usize>,
    pub s4_order: Option<usize>,
    pub tol: Option<f64>,
    pub grassmann_l: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub report: Option<PathBuf>,
    pub g: Option<Vec<f64>>,
    pub family: Option<[f64; 5]>,
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().or_else(|_| usage(format!("invalid value `{v}` for `{key}`")))
}

fn parse_reals(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| parse_value(key, s)).collect()
}

/// The five family parameters from a list.
pub fn family_params(v: &[f64]) -> Result<[f64; 5]> {
    <[f64; 5]>::try_from(v).or_else(|_| usage(format!("--family takes 5 numbers (λ c1 c2 c3 c4), got {}", v.len())))
}

impl ConfigPatch {
    /// Parses `key = value` lines; `#` starts a comment, dashes and
    /// underscores in keys are interchangeable.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = ConfigPatch::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("config line {}: expected key = value", n + 1));
            };
            let key = k.trim().replace('-', "_");
            let v = v.trim();
            match key.as_str() {
                "case" => p.case = Some(v.parse()?),
                "transposed" => p.transposed = Some(parse_value(&key, v)?),
                "s2_order" => p.s2_order = Some(parse_value(&key, v)?),
                "s4_order" => p.s4_order = Some(parse_value(&key, v)?),
                "tol" => p.tol = Some(parse_value(&key, v)?),
                "grassmann_l" => p.grassmann_l = Some(parse_value(&key, v)?),
                "seed" => p.seed = Some(parse_value(&key, v)?),
                "samples" => p.samples = Some(parse_value(&key, v)?),
                "report" => p.report = Some(PathBuf::from(v)),
                "g" => p.g = Some(parse_reals(&key, v)?),
                "family" => p.family = Some(family_params(&parse_reals(&key, v)?)?),
                other => return usage(format!("config line {}: unknown key `{other}`", n + 1)),
            }
        }
        Ok(p)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .or_else(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

impl RunConfig {
    /// Overwrites every field the patch sets.
    pub fn apply(mut self, p: ConfigPatch) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = p.$f { self.$f = v; } )* };
        }
        take!(case, transposed, s2_order, s4_order, grassmann_l, seed);
        self.tol = p.tol.or(self.tol);
        self.samples = p.samples.or(self.samples);
        self.report = p.report.or(self.report);
        self.g = p.g.or(self.g);
        self.family = p.family.or(self.family);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, o) in [("s2-order", self.s2_order), ("s4-order", self.s4_order)] {
            if o < MIN_ORDER {
                return usage(format!("--{name} must be at least {MIN_ORDER}, got {o}"));
            }
        }
        let l = self.grassmann_l;
        if !(2..=16).contains(&l) || !l.is_multiple_of(2) {
            return usage(format!("--grassmann-l must be even with 2 ≤ L ≤ 16, got {l}"));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return usage(format!("--tol must be a positive number, got {t}"));
            }
        }
        if self.samples == Some(0) {
            return usage("--samples must be positive");
        }
        let reals = self.g.iter().flatten().chain(self.family.iter().flatten());
        if reals.clone().any(|x| !x.is_finite()) {
            return usage("gauge parameters must be finite");
        }
        Ok(())
    }

    pub fn order(&self, case: Case) -> usize {
        if case.base_dim() == 2 {
            self.s2_order
        } else {
            self.s4_order
        }
    }

    pub fn charge_tol(&self, case: Case) -> f64 {
        self.tol.unwrap_or(if case.base_dim() == 2 { 1e-8 } else { 1e-6 })
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

/// One gauge transformation and its residuals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeRun {
    /// `seeded-unitary`, `matrix` or `family`.
    pub source: String,
    /// Real components of the matrix entries (bodies for the graded case).
    pub matrix: Vec<f64>,
    pub report: OrbitReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelledTime {
    pub label: String,
    pub seconds: f64,
}

/// Wall-clock times; excluded from the determinism contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_s: f64,
    pub charges: Vec<LabelledTime>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool: ToolInfo,
    pub command: String,
    pub config: RunConfig,
    pub charges: Vec<ChargeReport>,
    pub gauge: Vec<GaugeRun>,
    pub checks: Vec<Check>,
    pub totals: Totals,
    pub pass: bool,
    pub timing: Timing,
}

impl ReportDocument {
    fn new(command: &str, config: &RunConfig, charges: Vec<ChargeReport>, gauge: Vec<GaugeRun>, checks: Vec<Check>, start: Instant) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let timing = Timing {
            total_s: start.elapsed().as_secs_f64(),
            charges: charges.iter().map(|c| LabelledTime { label: c.label.clone(), seconds: c.wall_time_s }).collect(),
        };
        ReportDocument {
            schema: SCHEMA.to_string(),
            tool: ToolInfo { name: env!("CARGO_PKG_NAME").to_string(), version: env!("CARGO_PKG_VERSION").to_string() },
            command: command.to_string(),
            config: config.clone(),
            totals: Totals { checks: checks.len(), passed, failed: checks.len() - passed },
            pass: !checks.is_empty() && passed == checks.len(),
            charges,
            gauge,
            checks,
            timing,
        }
    }

    /// The document as a JSON value with canonical floats.
    pub fn to_value(&self) -> Value {
        canonical_floats(serde_json::to_value(self).expect("report serializes"))
    }

    /// The document without `timing`, the part covered by determinism.
    pub fn payload(&self) -> Value {
        let mut v = self.to_value();
        if let Value::Object(m) = &mut v {
            m.shift_remove("timing");
        }
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::Numeric(format!("cannot write {}: {e}", path.display())))
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// One `PASS`/`FAIL` line per check and a totals line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let r = c.residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            let _ = write!(s, "{verdict} {:<48} {r:>10} <= {:.1e}", c.name, c.threshold);
            if !c.pass {
                if let Some(d) = &c.detail {
                    let _ = write!(s, "  ({d})");
                }
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{}: {}/{} checks passed", self.command, self.totals.passed, self.totals.checks);
        s
    }
}

/// `x` with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn canonical_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => match n.as_f64() {
            Some(x) if x.is_finite() => Value::Number(format_float(x).parse::<Number>().expect("valid JSON number")),
            _ => Value::Null,
        },
        Value::Array(a) => Value::Array(a.into_iter().map(canonical_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonical_floats(v))).collect()),
        other => other,
    }
}

fn charge_checks(cfg: &RunConfig, pc: ProjectorCase, r: &ChargeReport, out: &mut Vec<Check>) {
    let label = pc.label();
    let detail = format!("order {}, value {}", r.quadrature.order, format_float(r.charge()));
    out.push(Check::residual(format!("charge.{label}"), r.charge_error, cfg.charge_tol(pc.case)).with_detail(detail));
    out.push(Check::residual(format!("charge.{label}.route_agreement"), r.route_difference, CONVERGENCE_TOL));
    out.push(Check::residual(format!("charge.{label}.chart_agreement"), r.chart_difference, CONVERGENCE_TOL));
    out.push(Check::residual(format!("charge.{label}.density_proportionality"), r.proportionality_residual, 1e-10));
    if let Some(m) = r.c1_max_density {
        out.push(
            Check::residual(format!("charge.{label}.c1_vanishes"), m.max(r.c1), 1e-10)
                .with_detail(format!("{} density samples", r.densities.len())),
        );
    }
    if pc.case == Case::Graded {
        out.push(checks::graded_body_form_check(pc.transposed));
    }
}

/// Projector identities, connection anti-hermiticity and charges of the
/// selected projectors; with both `p` and `q` present, also that their
/// charges differ.
pub fn cmd_verify(cfg: &RunConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let start = Instant::now();
    let (mut out, mut charges) = (Vec::new(), Vec::new());
    let l = cfg.grassmann_l;
    for case in cfg.case.cases() {
        let pcs: Vec<ProjectorCase> = if cfg.transposed {
            vec![ProjectorCase::new(case, true)]
        } else {
            vec![ProjectorCase::new(case, false), ProjectorCase::new(case, true)]
        };
        for &pc in &pcs {
            out.extend(checks::projector_suite(pc, cfg.seed, cfg.samples_or(PROJECTOR_SAMPLES), l));
        }
        out.extend(checks::connection_suite(case, cfg.seed, cfg.samples_or(CONNECTION_SAMPLES), l));
        let opts = ChargeOptions { order: cfg.order(case), density_samples: 100, seed: cfg.seed, convergence_tol: CONVERGENCE_TOL };
        let mut pair = Vec::new();
        for &pc in &pcs {
            match charge(pc, &opts) {
                Ok(r) => {
                    charge_checks(cfg, pc, &r, &mut out);
                    pair.push(r.clone());
                    charges.push(r);
                }
                Err(e) => out.push(Check::error(format!("charge.{}", pc.label()), cfg.charge_tol(case), &e)),
            }
        }
        if let [p, q] = &pair[..] {
            let ok = inequivalent(p, q);
            out.push(Check::flag(
                format!("charge.{case}.p_q_inequivalent"),
                ok,
                format!("charges {} and {}", p.charge().round(), q.charge().round()),
            ));
        }
    }
    Ok(ReportDocument::new("verify", cfg, charges, Vec::new(), out, start))
}

fn reals_to_complex(v: &[f64]) -> Vec<Complex64> {
    v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Builds a gauge element from flat reals: 8 for `GL(2,ℂ)` (row-major,
/// re/im pairs), 16 for `GL(2,ℍ)` (row-major, four components per entry),
/// 8 for the graded case (`a`, `b`, `η` as in [`graded_element`]).
pub fn parse_gauge_element(case: Case, g: &[f64], l: usize) -> Result<GaugeElement> {
    let expect = match case {
        Case::Monopole | Case::Graded => 8,
        Case::Instanton => 16,
    };
    if g.len() != expect {
        return usage(format!("--g for the {case} case takes {expect} numbers, got {}", g.len()));
    }
    let m = match case {
        Case::Monopole => {
            let z = reals_to_complex(g);
            CaseMatrix::Complex(GradedMatrix::from_rows(vec![z[..2].to_vec(), z[2..].to_vec()])?)
        }
        Case::Instanton => {
            let q: Vec<Quaternion> = g.chunks(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3])).collect();
            CaseMatrix::Quaternion(GradedMatrix::from_rows(vec![q[..2].to_vec(), q[2..].to_vec()])?)
        }
        Case::Graded => {
            let p: [f64; 8] = g.try_into().expect("length checked");
            return graded_element(&p, &GrassmannAlgebra::new(l)?);
        }
    };
    GaugeElement::new(m)
}

fn gauge_checks(cfg: &RunConfig, name: &str, r: &OrbitReport, out: &mut Vec<Check>) {
    let connection = if r.kind == TransformKind::Unitary { "connection_invariance" } else { "connection_formula" };
    out.push(Check::residual(format!("{name}.normalization"), r.normalization_residual, ORBIT_TOL));
    out.push(Check::residual(format!("{name}.projector"), r.projector_residual, ORBIT_TOL));
    out.push(Check::residual(format!("{name}.partial_isometry"), r.partial_isometry_residual, ORBIT_TOL));
    out.push(Check::residual(format!("{name}.{connection}"), r.connection_residual, ORBIT_TOL));
    out.push(Check::residual(format!("{name}.anti_hermiticity"), r.anti_hermiticity_residual, ORBIT_TOL));
    if let (Some(c), Some(c0)) = (r.charge, r.reference_charge) {
        let tol = cfg.tol.unwrap_or(GAUGE_CHARGE_TOL);
        out.push(
            Check::residual(format!("{name}.charge_preserved"), (c - c0).abs(), tol)
                .with_detail(format!("charge {}, untransformed {}", format_float(c), format_float(c0))),
        );
        out.push(Check::residual(format!("{name}.charge"), (c + 1.0).abs(), tol));
    }
}

/// Applies a gauge element to the projector `p` of the selected case: the
/// given matrix, the conformal family element, or a seeded random unitary
/// for each selected case.
pub fn cmd_gauge(cfg: &RunConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let start = Instant::now();
    let single = || match cfg.case.cases()[..] {
        [c] => Ok(c),
        _ => usage("--g needs a single --case"),
    };
    let elements: Vec<(GaugeElement, &str)> = match (&cfg.g, &cfg.family) {
        (Some(_), Some(_)) => return usage("--g and --family are exclusive"),
        (None, Some(f)) => {
            if !matches!(cfg.case, CaseSelector::Instanton | CaseSelector::All) {
                return usage("--family applies to the instanton case");
            }
            let g = instanton_family(*f).or_else(|e| usage(e.to_string()))?;
            vec![(g, "family")]
        }
        (Some(g), None) => vec![(parse_gauge_element(single()?, g, cfg.grassmann_l)?, "matrix")],
        (None, None) => {
            let alg = GrassmannAlgebra::new(cfg.grassmann_l)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            cfg.case.cases().into_iter().map(|c| (random_unitary(c, &mut rng, &alg), "seeded-unitary")).collect()
        }
    };
    let (mut out, mut runs) = (Vec::new(), Vec::new());
    for (g, source) in elements {
        let case = g.case();
        let name = format!("gauge.{case}");
        let result = sample_tangents(case, cfg.seed, cfg.samples_or(GAUGE_SAMPLES), cfg.grassmann_l).and_then(|draws| {
            let order = Some(cfg.order(case));
            if g.is_unitary() {
                su_transform(&g, &draws, order)
            } else {
                gl_transform(&g, &draws, order)
            }
        });
        match result {
            Ok(r) => {
                gauge_checks(cfg, &name, &r, &mut out);
                runs.push(GaugeRun { source: source.to_string(), matrix: g.matrix().flat_body(), report: r });
            }
            Err(e) => out.push(Check::error(name, ORBIT_TOL, &e)),
        }
    }
    Ok(ReportDocument::new("gauge", cfg, Vec::new(), runs, out, start))
}

/// Algebra axioms, `d² = 0` and Leibniz, the supergroup identities, the
/// graded body form and the quadrature volumes.
pub fn cmd_selftest(cfg: &RunConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let start = Instant::now();
    let mut out = Vec::new();
    let mut suite = |name: &str, r: Result<Vec<Check>>| match r {
        Ok(c) => out.extend(c),
        Err(e) => out.push(Check::error(name, 0.0, &e)),
    };
    let l = cfg.grassmann_l;
    suite("algebra", checks::algebra_suite(cfg.seed, cfg.samples_or(ALGEBRA_SAMPLES), l));
    suite("forms", checks::exterior_suite(cfg.seed, cfg.samples_or(FORM_SAMPLES)));
    suite("supergroup", checks::supergroup_suite(cfg.seed, cfg.samples_or(SUPERGROUP_SAMPLES), l));
    out.push(checks::graded_body_form_check(false));
    out.push(checks::graded_body_form_check(true));
    let dims = dimension_check();
    out.push(Check::flag(
        "gauge.family_dimension",
        dims.family == 5,
        format!("dim SL(2,H) = {}, dim Sp(2) = {}, family = {}", dims.sl2h, dims.sp2, dims.family),
    ));
    out.extend(checks::volume_suite(cfg.s2_order, cfg.s4_order));
    Ok(ReportDocument::new("selftest", cfg, Vec::new(), Vec::new(), out, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_and_flags() {
        let p = ConfigPatch::parse("# run\ncase = graded\ns2-order=40\nseed = 7 # trailing\ng = 1, 0, 0 0 0 0 0 0\n").unwrap();
        let cfg = RunConfig::default().apply(p).apply(ConfigPatch { seed: Some(9), ..Default::default() });
        assert_eq!(cfg.case, CaseSelector::Graded);
        assert_eq!(cfg.s2_order, 40);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.g.as_ref().unwrap().len(), 8);
        assert!(matches!(ConfigPatch::parse("colour = red"), Err(Error::Usage(_))));
        assert!(matches!(ConfigPatch::parse("seed = x"), Err(Error::Usage(_))));
    }

    #[test]
    fn validation() {
        let bad = |p: ConfigPatch| RunConfig::default().apply(p).validate();
        assert!(bad(ConfigPatch { s2_order: Some(3), ..Default::default() }).is_err());
        assert!(bad(ConfigPatch { grassmann_l: Some(3), ..Default::default() }).is_err());
        assert!(bad(ConfigPatch { grassmann_l: Some(18), ..Default::default() }).is_err());
        assert!(bad(ConfigPatch { tol: Some(-1.0), ..Default::default() }).is_err());
        assert!(bad(ConfigPatch { grassmann_l: Some(16), s2_order: Some(4), ..Default::default() }).is_ok());
    }

    #[test]
    fn floats_have_seventeen_digits() {
        let v = canonical_floats(serde_json::json!({"a": 0.1, "b": 3, "c": f64::NAN, "d": [1.0]}));
        assert_eq!(v.to_string(), r#"{"a":1.0000000000000001e-1,"b":3,"c":null,"d":[1.0000000000000000e+0]}"#);
    }

    #[test]
    fn gauge_element_parsing() {
        assert!(matches!(parse_gauge_element(Case::Monopole, &[1.0; 7], 2), Err(Error::Usage(_))));
        let g = parse_gauge_element(Case::Monopole, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0], 2).unwrap();
        assert!(g.is_unitary());
        let mut q = [0.0; 16];
        q[0] = 1.0;
        q[12] = 1.0;
        assert!(parse_gauge_element(Case::Instanton, &q, 2).unwrap().is_unitary());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = parse_gauge_element(Case::Graded, &[r, 0.0, r, 0.0, 0.1, 0.0, 0.0, 0.2], 2).unwrap();
        assert!(s.is_unitary());
    }

    #[test]
    fn monopole_verify_is_deterministic() {
        let cfg = RunConfig { case: CaseSelector::Monopole, samples: Some(50), seed: 7, ..Default::default() };
        let a = cmd_verify(&cfg).unwrap();
        assert!(a.pass, "{}", a.summary());
        assert_eq!(a.payload(), cmd_verify(&cfg).unwrap().payload());
        let v = a.to_value();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys[..3], ["schema", "tool", "command"]);
    }

    #[test]
    fn identity_gauge_has_zero_residuals() {
        let cfg = RunConfig {
            case: CaseSelector::Monopole,
            g: Some(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
            samples: Some(20),
            s2_order: 16,
            ..Default::default()
        };
        let doc = cmd_gauge(&cfg).unwrap();
        assert!(doc.pass, "{}", doc.summary());
        assert!(doc.gauge[0].report.connection_residual < 1e-15);
    }

    #[test]
    fn selftest_coarse_order_fails() {
        let cfg = RunConfig { s2_order: 4, samples: Some(20), ..Default::default() };
        let doc = cmd_selftest(&cfg).unwrap();
        assert!(!doc.pass);
        let failed: Vec<&str> = doc.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"volume.s2"), "{failed:?}");
        assert!(failed.iter().all(|n| n.starts_with("volume.s2")), "{failed:?}");
    }
}
