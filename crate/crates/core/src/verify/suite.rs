//! Runs every applicable check for a model and collects a report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::conditions::{condition_outcomes, has_conditions, ConditionKind};
use super::{braiding, expansion_check, hamiltonian_recovery, regularity, sutherland_residual, ybe_residual, Comparison};
use crate::boost::{integrability_residual, transfer_commutation, DerivativeSource};
use crate::catalog::presets::format_complex;
use crate::catalog::ModelSpec;
use crate::error::{Result, YbeError};
use crate::sampling::{stream_seed, Sampler, SpectralSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Ybe,
    Regularity,
    Braiding,
    Hamiltonian,
    Expansion,
    Sutherland,
    Boost,
    Transfer,
    Hermiticity,
    Normality,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::Ybe,
        CheckName::Regularity,
        CheckName::Braiding,
        CheckName::Hamiltonian,
        CheckName::Expansion,
        CheckName::Sutherland,
        CheckName::Boost,
        CheckName::Transfer,
        CheckName::Hermiticity,
        CheckName::Normality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Ybe => "ybe",
            CheckName::Regularity => "regularity",
            CheckName::Braiding => "braiding",
            CheckName::Hamiltonian => "hamiltonian",
            CheckName::Expansion => "expansion",
            CheckName::Sutherland => "sutherland",
            CheckName::Boost => "boost",
            CheckName::Transfer => "transfer",
            CheckName::Hermiticity => "hermiticity",
            CheckName::Normality => "normality",
        }
    }

    pub fn needs_r(self) -> bool {
        !matches!(self, CheckName::Boost | CheckName::Hermiticity | CheckName::Normality)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckName::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown check '{s}'"))
    }
}

/// Pass thresholds. Algebraic checks sit at 1e-8..1e-10; anything built on
/// a difference stencil gets 1e-5..1e-6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub ybe: f64,
    pub regularity: f64,
    pub braiding: f64,
    pub hamiltonian: f64,
    pub sutherland: f64,
    pub boost_analytic: f64,
    pub boost_stencil: f64,
    pub transfer: f64,
    pub hermiticity: f64,
    pub normality: f64,
    /// Expansion uses the model's curvature bound; this multiplies it.
    pub expansion_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ybe: 1e-8,
            regularity: 1e-9,
            braiding: 1e-8,
            hamiltonian: 1e-6,
            sutherland: 1e-5,
            boost_analytic: 1e-8,
            boost_stencil: 1e-6,
            transfer: 1e-8,
            hermiticity: 1e-10,
            normality: 1e-10,
            expansion_factor: 1.0,
        }
    }
}

impl Tolerances {
    /// Sets one tolerance by name ("ybe", "boost", "boost-stencil", ...).
    pub fn set(&mut self, name: &str, value: f64) -> std::result::Result<(), String> {
        let slot = match name {
            "ybe" => &mut self.ybe,
            "regularity" => &mut self.regularity,
            "braiding" => &mut self.braiding,
            "hamiltonian" => &mut self.hamiltonian,
            "sutherland" => &mut self.sutherland,
            "boost" => &mut self.boost_analytic,
            "boost-stencil" => &mut self.boost_stencil,
            "transfer" => &mut self.transfer,
            "hermiticity" => &mut self.hermiticity,
            "normality" => &mut self.normality,
            "expansion" => &mut self.expansion_factor,
            _ => return Err(format!("unknown tolerance '{name}'")),
        };
        if !(value > 0.0 && value.is_finite()) {
            return Err(format!("tolerance for '{name}' must be positive"));
        }
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every per-check sample count when set.
    pub samples: Option<usize>,
    pub tolerances: Tolerances,
    /// Offset u − v for the expansion check.
    pub expansion_delta: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: None, tolerances: Tolerances::default(), expansion_delta: 1e-3 }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        SuiteConfig { seed, ..SuiteConfig::default() }
    }

    fn count(&self, check: CheckName) -> usize {
        self.samples.unwrap_or(match check {
            CheckName::Ybe => 20,
            CheckName::Regularity | CheckName::Braiding => 10,
            CheckName::Transfer => 3,
            _ => 5,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub status: Status,
    /// Largest residual over the samples; absent when skipped or errored.
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: Option<bool>,
    pub samples: Vec<SpectralSample>,
    /// Extra observations: coefficients, comparison policy, derivative source.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// True for errors caused by the evaluation point rather than the invocation.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub domain_error: bool,
}

impl CheckResult {
    fn skipped(name: CheckName, tol: f64, why: &str) -> Self {
        CheckResult {
            name,
            status: Status::Skipped,
            residual: None,
            tol,
            pass: None,
            samples: Vec::new(),
            notes: vec![why.to_string()],
            error: None,
            domain_error: false,
        }
    }

    fn errored(name: CheckName, tol: f64, samples: Vec<SpectralSample>, e: &YbeError) -> Self {
        CheckResult {
            name,
            status: Status::Error,
            residual: None,
            tol,
            pass: Some(false),
            notes: Vec::new(),
            error: Some(e.to_string()),
            domain_error: e.is_domain(),
            samples,
        }
    }

    fn measured(name: CheckName, residual: f64, tol: f64, samples: Vec<SpectralSample>, notes: Vec<String>) -> Self {
        let pass = residual <= tol;
        CheckResult {
            name,
            status: if pass { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            tol,
            pass: Some(pass),
            samples,
            notes,
            error: None,
            domain_error: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// True when no executed check failed or errored.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped))
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_domain_error(&self) -> bool {
        self.checks.iter().any(|c| c.domain_error)
    }

    /// JSON with elapsed_ms zeroed, for byte-level comparisons.
    pub fn to_stable_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

fn samples_for(model: &ModelSpec, cfg: &SuiteConfig, check: CheckName, arity: usize) -> Vec<SpectralSample> {
    let seed = stream_seed(cfg.seed, &format!("{}/{}", model.id, check));
    Sampler::new(model.domain, arity, seed).take(cfg.count(check))
}

/// Max residual over samples; `f` returns the residual and an optional note.
fn over_samples<F>(samples: &[SpectralSample], mut f: F) -> Result<(f64, Vec<String>)>
where
    F: FnMut(&[C64]) -> Result<(f64, Option<String>)>,
{
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for s in samples {
        let (r, note) = f(&s.0)?;
        // NaN must fail, so it wins over any finite value.
        worst = if r.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(r) };
        notes.extend(note);
    }
    Ok((worst, notes))
}

fn conditions_check(model: &ModelSpec, cfg: &SuiteConfig, name: CheckName, kind: ConditionKind, tol: f64) -> CheckResult {
    if !has_conditions(&model.id) {
        return CheckResult::skipped(name, tol, "no condition table for this model");
    }
    match condition_outcomes(&model.id, kind, cfg.seed) {
        Err(e) => CheckResult::errored(name, tol, Vec::new(), &e),
        Ok(rows) => {
            let held = rows.iter().filter(|r| r.satisfied).map(|r| r.residual).fold(0.0, f64::max);
            let notes = rows
                .iter()
                .map(|r| {
                    let tag = if r.satisfied { "row" } else { "control" };
                    format!("{tag} [{}] theta={} residual={:.3e}", r.row, r.theta, r.residual)
                })
                .collect();
            CheckResult::measured(name, held, tol, Vec::new(), notes)
        }
    }
}

fn run_one(model: &ModelSpec, cfg: &SuiteConfig, name: CheckName) -> CheckResult {
    let tol = &cfg.tolerances;
    let nominal = match name {
        CheckName::Ybe => tol.ybe,
        CheckName::Regularity => tol.regularity,
        CheckName::Braiding => tol.braiding,
        CheckName::Hamiltonian => tol.hamiltonian,
        CheckName::Expansion => model.curvature * tol.expansion_factor,
        CheckName::Sutherland => tol.sutherland,
        CheckName::Boost => {
            if model.has_analytic_dh() {
                tol.boost_analytic
            } else {
                tol.boost_stencil
            }
        }
        CheckName::Transfer => tol.transfer,
        CheckName::Hermiticity => tol.hermiticity,
        CheckName::Normality => tol.normality,
    };
    if name.needs_r() && !model.has_r() {
        return CheckResult::skipped(name, nominal, "model has no R-matrix");
    }
    let arity = match name {
        CheckName::Ybe | CheckName::Transfer => 3,
        CheckName::Braiding | CheckName::Sutherland => 2,
        _ => 1,
    };
    let samples = match name {
        CheckName::Hermiticity => return conditions_check(model, cfg, name, ConditionKind::Hermiticity, nominal),
        CheckName::Normality => return conditions_check(model, cfg, name, ConditionKind::Normality, nominal),
        _ => samples_for(model, cfg, name, arity),
    };
    let delta = cfg.expansion_delta;
    let outcome = over_samples(&samples, |p| match name {
        CheckName::Ybe => Ok((ybe_residual(model, p[0], p[1], p[2])?, None)),
        CheckName::Regularity => {
            let c = regularity(model, p[0])?;
            Ok((c.residual, Some(format!("alpha={}", format_complex(c.value)))))
        }
        CheckName::Braiding => {
            let c = braiding(model, p[0], p[1])?;
            Ok((c.residual, Some(format!("beta={}", format_complex(c.value)))))
        }
        CheckName::Hamiltonian => {
            let r = hamiltonian_recovery(model, p[0], tol.hamiltonian)?;
            let note = match r.comparison {
                Comparison::Exact => "comparison=exact".to_string(),
                Comparison::ModuloIdentity => format!("comparison=modulo-identity shift={}", format_complex(r.shift)),
            };
            Ok((r.residual, Some(note)))
        }
        CheckName::Expansion => Ok((expansion_check(model, p[0], p[0] - delta)?, None)),
        CheckName::Sutherland => {
            let (a, b) = sutherland_residual(model, p[0], p[1])?;
            Ok((a.max(b), None))
        }
        CheckName::Boost => {
            let r = integrability_residual(model, p[0])?;
            let src = match r.derivative {
                DerivativeSource::Analytic => "derivative=analytic",
                DerivativeSource::FiniteDifference => "derivative=finite-difference",
            };
            Ok((r.residual, Some(src.to_string())))
        }
        CheckName::Transfer => {
            let mut worst: f64 = 0.0;
            for len in [2, 3] {
                worst = worst.max(transfer_commutation(model, p[0], p[1], p[2], len)?);
            }
            Ok((worst, None))
        }
        CheckName::Hermiticity | CheckName::Normality => unreachable!(),
    });
    match outcome {
        Err(e) => CheckResult::errored(name, nominal, samples, &e),
        Ok((residual, mut notes)) => {
            notes.sort();
            notes.dedup();
            // Per-sample coefficients are data; keep the list short and ordered.
            CheckResult::measured(name, residual, nominal, samples, notes)
        }
    }
}

/// Runs the listed checks, in the given order.
pub fn run_checks(model: &ModelSpec, cfg: &SuiteConfig, checks: &[CheckName]) -> VerificationReport {
    let start = Instant::now();
    let results = checks.iter().map(|&c| run_one(model, cfg, c)).collect();
    VerificationReport {
        model: model.id.clone(),
        seed: cfg.seed,
        checks: results,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_suite(model: &ModelSpec, cfg: &SuiteConfig) -> VerificationReport {
    run_checks(model, cfg, &CheckName::ALL)
}
