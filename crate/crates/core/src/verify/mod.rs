//! Verification suites over the whole library, producing one record per
//! check. Used by the command-line tool and the acceptance tests.

mod algebra;
mod phase;
mod relativistic;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dirac::DiracKind;
use crate::error::{Error, Result};
use crate::grassmann::Multivector;
use crate::phase::{PhaseFunction, Polynomial};
use crate::scalar::{Bindings, Coeff, Exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cliffordization,
    Wick,
    Oscillator,
    Landau,
    Susy,
    Dirac,
    Fw,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Cliffordization, Suite::Wick, Suite::Oscillator, Suite::Landau, Suite::Susy, Suite::Dirac, Suite::Fw];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cliffordization => "cliffordization",
            Suite::Wick => "wick",
            Suite::Oscillator => "oscillator",
            Suite::Landau => "landau",
            Suite::Susy => "susy",
            Suite::Dirac => "dirac",
            Suite::Fw => "fw",
        }
    }

    /// Parse a comma-separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("empty suite list".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(Error::InvalidParameter(format!("unknown backend '{s}'"))),
        }
    }
}

pub fn parse_reps(s: &str) -> Result<Vec<DiracKind>> {
    let mut out = Vec::new();
    for part in s.split(',').map(|p| p.trim().to_ascii_uppercase()).filter(|p| !p.is_empty()) {
        let k = DiracKind::ALL
            .into_iter()
            .find(|k| k.name() == part)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown representation '{part}'")))?;
        if !out.contains(&k) {
            out.push(k);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("empty representation list".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub backend: Backend,
    /// Numeric `ħ` for float checks and for evaluating exact residuals.
    pub hbar: f64,
    pub tolerance: f64,
    pub seed: u64,
    #[serde(serialize_with = "serialize_reps")]
    pub reps: Vec<DiracKind>,
    pub witten_truncation: usize,
    pub fw_order: i32,
}

fn serialize_reps<S: serde::Serializer>(reps: &[DiracKind], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(reps.iter().map(|k| k.name()))
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            backend: Backend::Exact,
            hbar: 1.0,
            tolerance: 1e-10,
            seed: 20240601,
            reps: DiracKind::ALL.to_vec(),
            witten_truncation: 8,
            fw_order: crate::fw::DEFAULT_ORDER,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::InvalidParameter(format!("ħ must be positive, got {}", self.hbar)));
        }
        if self.witten_truncation < 1 {
            return Err(Error::InvalidParameter("Witten truncation must be at least 1".into()));
        }
        if self.fw_order < 1 {
            return Err(Error::InvalidParameter("FW order must be at least 1".into()));
        }
        if self.reps.is_empty() {
            return Err(Error::InvalidParameter("no Dirac representation selected".into()));
        }
        Ok(())
    }

    pub fn env(&self) -> Bindings {
        Bindings { hbar: self.hbar, c: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub check: String,
    pub inputs_hash: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
    pub tolerance: Option<f64>,
    pub backend: Backend,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.suites.iter().flat_map(|s| s.checks.iter()).filter(|c| !c.pass)
    }
}

/// Exact residual that can also be measured numerically.
pub(crate) trait Residual {
    fn is_exact_zero(&self) -> bool;
    fn magnitude(&self, env: &Bindings) -> f64;
}

impl Residual for Exact {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self, env: &Bindings) -> f64 {
        self.to_complex(env).norm()
    }
}

impl Residual for Multivector<Exact> {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self, env: &Bindings) -> f64 {
        self.to_complex(env).norm1()
    }
}

impl Residual for Polynomial {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self, env: &Bindings) -> f64 {
        self.terms().map(|(_, c)| c.to_complex(env).norm()).sum()
    }
}

impl Residual for PhaseFunction {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self, env: &Bindings) -> f64 {
        self.blocks()
            .flat_map(|(_, b)| b.values())
            .map(|u| u.to_complex(env).norm1())
            .sum()
    }
}

impl Residual for Complex64 {
    fn is_exact_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn magnitude(&self, _: &Bindings) -> f64 {
        self.norm()
    }
}

impl Residual for Multivector<Complex64> {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self, _: &Bindings) -> f64 {
        self.norm1()
    }
}

fn hash_inputs(inputs: &str) -> String {
    let digest = Sha256::digest(inputs.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects the records of one suite.
pub(crate) struct Checker<'a> {
    pub cfg: &'a RunConfig,
    suite: Suite,
    records: Vec<CheckRecord>,
}

impl<'a> Checker<'a> {
    fn new(cfg: &'a RunConfig, suite: Suite) -> Self {
        Self { cfg, suite, records: Vec::new() }
    }

    pub fn env(&self) -> Bindings {
        self.cfg.env()
    }

    pub fn float_backend(&self) -> bool {
        self.cfg.backend == Backend::Float
    }

    /// An identity that holds exactly; under the float backend it is
    /// judged by the numeric size of the residual.
    pub fn exact(&mut self, id: &str, check: &str, inputs: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, residual: &impl Residual) {
        let magnitude = residual.magnitude(&self.env());
        self.aggregate(id, check, inputs, lhs, rhs, residual.is_exact_zero(), magnitude);
    }

    /// Summary of many exact comparisons: `all_zero` decides under the
    /// exact backend, `magnitude` under the float backend.
    pub fn aggregate(&mut self, id: &str, check: &str, inputs: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, all_zero: bool, magnitude: f64) {
        let (pass, tolerance) = match self.cfg.backend {
            Backend::Exact => (all_zero, None),
            Backend::Float => (magnitude <= self.cfg.tolerance, Some(self.cfg.tolerance)),
        };
        let exact = self.cfg.backend == Backend::Exact;
        self.push(id, check, inputs, lhs.to_string(), rhs.to_string(), magnitude, tolerance, exact, pass);
    }

    /// A boolean property with no natural residual.
    pub fn holds(&mut self, id: &str, check: &str, inputs: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, ok: bool) {
        self.push(id, check, inputs, lhs.to_string(), rhs.to_string(), if ok { 0.0 } else { 1.0 }, None, true, ok);
    }

    /// A floating-point comparison; the tolerance is the larger of the
    /// check's own bound and the configured one.
    pub fn float(&mut self, id: &str, check: &str, inputs: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, residual: f64, tol: f64) {
        let tol = tol.max(self.cfg.tolerance);
        let pass = residual.is_finite() && residual <= tol;
        self.push(id, check, inputs, lhs.to_string(), rhs.to_string(), residual, Some(tol), false, pass);
    }

    /// Record a computation that failed outright.
    pub fn error(&mut self, id: &str, check: &str, inputs: &str, err: &Error) {
        self.push(id, check, inputs, format!("error: {err}"), String::new(), f64::INFINITY, None, false, false);
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: &str,
        check: &str,
        inputs: &str,
        lhs: String,
        rhs: String,
        residual: f64,
        tolerance: Option<f64>,
        exact: bool,
        pass: bool,
    ) {
        self.records.push(CheckRecord {
            id: format!("{}/{id}", self.suite),
            suite: self.suite,
            check: check.to_string(),
            inputs_hash: hash_inputs(inputs),
            lhs,
            rhs,
            // infinities do not survive JSON
            residual: if residual.is_finite() { residual + 0.0 } else { f64::MAX },
            tolerance,
            backend: self.cfg.backend,
            exact,
            pass,
        });
    }

    /// Run a fallible block, turning an error into a failed record.
    pub fn guard(&mut self, id: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.error(id, "computation", id, &e);
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut ck = Checker::new(cfg, suite);
    match suite {
        Suite::Cliffordization => algebra::cliffordization(&mut ck),
        Suite::Wick => algebra::wick(&mut ck),
        Suite::Oscillator => phase::oscillator(&mut ck),
        Suite::Landau => phase::landau(&mut ck),
        Suite::Susy => phase::susy(&mut ck),
        Suite::Dirac => relativistic::dirac(&mut ck),
        Suite::Fw => relativistic::fw(&mut ck),
    }
    let checks = ck.records;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(SuiteReport { suite, passed: checks.len() - failed, failed, max_residual, checks })
}

pub fn run(suites: &[Suite], cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let suites: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, cfg)).collect::<Result<_>>()?;
    let passed = suites.iter().map(|s| s.passed).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    let max_residual = suites.iter().map(|s| s.max_residual).fold(0.0, f64::max);
    Ok(Report { config: cfg.clone(), pass: failed == 0, passed, failed, max_residual, suites })
}
