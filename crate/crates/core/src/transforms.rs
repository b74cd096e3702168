//! Identifications between solutions: maps (H, R) ↦ (H', R') that keep the
//! Yang-Baxter equation and regularity intact.
//!
//!   local basis   R' = W R W⁻¹, W = V(u)⊗V(v)
//!                 H' = (V⊗V) H (V⊗V)⁻¹ − [V̇V⁻¹⊗1 − 1⊗V̇V⁻¹]
//!   twist         R' = U2(u) R U1(v)⁻¹,  H' = U1 H U1⁻¹ + U̇1 U1⁻¹
//!   two twists    R' = U1 V2 R U2⁻¹ V1⁻¹ (constant U, V),  H' = (V⊗U) H (V⊗U)⁻¹
//!   normalization R' = g(u,v) R,  H' = H + ∂_u g(u,θ)|_{u=θ} · 1
//!   reparam.      R' = R(g(u), g(v)),  H' = ġ H(g)
//!   discrete      Rᵀ ↦ PHᵀP,
//!                 κ P R(v,u) P ↦ −PHP,  κ P Rᵀ(v,u) P ↦ −Hᵀ,  κ = α(v)/α(u)
//!
//! The parity maps swap u and v: without the swap P R(u,v) P and the
//! density PHP fail YBE and [Q2,Q3] = 0 as soon as R is not of difference
//! form. For difference form both versions are solutions.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::catalog::four::{xxz_nondiff_r, xxz_r};
use crate::catalog::sixteen::su22_table_density;
use crate::catalog::sixteen::Su22Point;
use crate::catalog::{general_two_site, Form, HEval, ModelSpec, Presets, REval};
use crate::cmat::{swap, CMat, TensorError, ONE, ZERO};
use crate::error::{Result, YbeError};
use crate::sampling::{stream_seed, Sampler};
use crate::verify::{run_checks, CheckName, Status, SuiteConfig, VerificationReport};

pub type MatPath = Arc<dyn Fn(C64) -> CMat + Send + Sync>;
pub type ScalarPath = Arc<dyn Fn(C64) -> C64 + Send + Sync>;
pub type ScalarField = Arc<dyn Fn(C64, C64) -> C64 + Send + Sync>;

/// Payloads with a condition estimate above this are rejected.
pub const CONDITION_LIMIT: f64 = 1e8;

/// A single-site matrix path V(θ) with its derivative.
#[derive(Clone)]
pub struct MatrixPayload {
    pub value: MatPath,
    pub deriv: MatPath,
}

fn invert(m: &CMat) -> Result<CMat> {
    m.inverse().map_err(|e| match e {
        TensorError::Singular => YbeError::SingularPayload(format!("{m:?}")),
        other => other.into(),
    })
}

impl MatrixPayload {
    pub fn new(value: MatPath, deriv: MatPath) -> Self {
        MatrixPayload { value, deriv }
    }

    pub fn constant(m: CMat) -> Self {
        let zero = CMat::zeros(m.rows(), m.cols());
        MatrixPayload { value: Arc::new(move |_| m.clone()), deriv: Arc::new(move |_| zero.clone()) }
    }

    /// θ ↦ V(θ)⁻¹ with derivative −V⁻¹ V̇ V⁻¹. Panics inside evaluation if
    /// V is singular, so validate first.
    pub fn inverse(&self) -> Self {
        let (v1, v2, dv) = (self.value.clone(), self.value.clone(), self.deriv.clone());
        MatrixPayload {
            value: Arc::new(move |t| v1(t).inverse().expect("payload validated as invertible")),
            deriv: Arc::new(move |t| {
                let inv = v2(t).inverse().expect("payload validated as invertible");
                -(&inv.matmul(&dv(t)).matmul(&inv))
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscreteMap {
    /// κ P R(v,u) P
    Conjugate,
    /// Rᵀ
    Transpose,
    /// κ P Rᵀ(v,u) P
    ConjugateTranspose,
}

#[derive(Clone)]
pub enum TransformSpec {
    Lbt(MatrixPayload),
    Twist(MatrixPayload),
    TwoTwist { u: CMat, v: CMat },
    Normalization { g: ScalarField, dg: ScalarPath },
    Reparameterization { g: ScalarPath, dg: ScalarPath },
    Discrete(DiscreteMap),
}

impl TransformSpec {
    pub fn label(&self) -> &'static str {
        match self {
            TransformSpec::Lbt(_) => "lbt",
            TransformSpec::Twist(_) => "twist",
            TransformSpec::TwoTwist { .. } => "two-twist",
            TransformSpec::Normalization { .. } => "normalization",
            TransformSpec::Reparameterization { .. } => "reparam",
            TransformSpec::Discrete(DiscreteMap::Conjugate) => "prp",
            TransformSpec::Discrete(DiscreteMap::Transpose) => "transpose",
            TransformSpec::Discrete(DiscreteMap::ConjugateTranspose) => "ptp",
        }
    }

    /// The transform undoing this one, where it has a closed form.
    pub fn inverse(&self) -> Option<TransformSpec> {
        Some(match self {
            TransformSpec::Lbt(v) => TransformSpec::Lbt(v.inverse()),
            TransformSpec::Twist(u) => TransformSpec::Twist(u.inverse()),
            TransformSpec::TwoTwist { u, v } => TransformSpec::TwoTwist { u: u.inverse().ok()?, v: v.inverse().ok()? },
            TransformSpec::Normalization { g, dg } => {
                let (g, dg) = (g.clone(), dg.clone());
                TransformSpec::Normalization { g: Arc::new(move |u, v| g(u, v).inv()), dg: Arc::new(move |t| -dg(t)) }
            }
            TransformSpec::Reparameterization { .. } => return None,
            TransformSpec::Discrete(d) => TransformSpec::Discrete(*d),
        })
    }

    /// Whether the transform is guaranteed to keep R(θ,θ) ∝ P.
    pub fn preserves_regularity(&self) -> bool {
        !matches!(self, TransformSpec::Twist(_) | TransformSpec::TwoTwist { .. })
    }

    pub fn is_twist(&self) -> bool {
        matches!(self, TransformSpec::Twist(_) | TransformSpec::TwoTwist { .. })
    }
}

impl TransformSpec {
    /// Local basis change V(θ) = v0 + θ·v1.
    pub fn linear_lbt(v0: CMat, v1: CMat) -> Self {
        TransformSpec::Lbt(linear_path(v0, v1))
    }

    /// Twist U(θ) = u0 + θ·u1.
    pub fn linear_twist(u0: CMat, u1: CMat) -> Self {
        TransformSpec::Twist(linear_path(u0, u1))
    }

    /// g(u,v) = exp(a(u − v) + b(u² − v²)).
    pub fn exp_normalization(a: C64, b: C64) -> Self {
        TransformSpec::Normalization {
            g: Arc::new(move |u, v| (a * (u - v) + b * (u * u - v * v)).exp()),
            dg: Arc::new(move |t| a + 2.0 * b * t),
        }
    }

    /// g(u) = Σ c_k u^k.
    pub fn polynomial_reparam(coeffs: Vec<C64>) -> Self {
        let d: Vec<C64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        TransformSpec::Reparameterization { g: Arc::new(move |t| horner(&coeffs, t)), dg: Arc::new(move |t| horner(&d, t)) }
    }
}

fn horner(c: &[C64], t: C64) -> C64 {
    c.iter().rev().fold(ZERO, |acc, &x| acc * t + x)
}

fn linear_path(v0: CMat, v1: CMat) -> MatrixPayload {
    let d = v1.clone();
    MatrixPayload::new(Arc::new(move |t| &v0 + &v1.scale(t)), Arc::new(move |_| d.clone()))
}

/// Parses "a, b; c, d" (rows split by ';', entries by ',') into a square matrix.
pub fn parse_matrix(s: &str) -> Result<CMat> {
    let bad = |m: String| YbeError::TransformFile(m);
    let rows: Vec<Vec<C64>> = s
        .split(';')
        .map(|row| row.split(',').map(|x| crate::catalog::presets::parse_complex(x).map_err(|e| bad(e.to_string()))).collect())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(bad(format!("matrix '{s}' is not square")));
    }
    Ok(CMat::from_fn(n, n, |i, j| rows[i][j]))
}

/// Reads a transform from `key = value` lines (`#` starts a comment).
///
/// ```text
/// kind = lbt            # lbt | twist | two-twist | normalization | reparam | prp | transpose | ptp
/// value = 1, 0.5; 0.2, 1
/// slope = 0, 0.1; 0, 0  # optional, V(θ) = value + θ·slope
/// ```
///
/// two-twist takes `u` and `v`, normalization `a` and `b` (default 0) for
/// g = exp(a(u−v) + b(u²−v²)), reparam `coeffs = c0, c1, ...`.
pub fn parse_transform(text: &str) -> Result<TransformSpec> {
    let mut kv = std::collections::BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| YbeError::TransformFile(format!("line {}: expected key = value", no + 1)))?;
        if kv.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(YbeError::TransformFile(format!("duplicate key '{}'", k.trim())));
        }
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| YbeError::TransformFile(format!("missing key '{k}'")));
    let scalar = |k: &str| -> Result<C64> {
        match kv.get(k) {
            Some(v) => crate::catalog::presets::parse_complex(v).map_err(|e| YbeError::TransformFile(e.to_string())),
            None => Ok(ZERO),
        }
    };
    let path = || -> Result<(CMat, CMat)> {
        let v0 = parse_matrix(get("value")?)?;
        let v1 = match kv.get("slope") {
            Some(s) => parse_matrix(s)?,
            None => CMat::zeros(v0.rows(), v0.cols()),
        };
        if v1.rows() != v0.rows() {
            return Err(YbeError::TransformFile("slope and value differ in size".into()));
        }
        Ok((v0, v1))
    };
    let kind = get("kind")?.as_str();
    let allowed: &[&str] = match kind {
        "lbt" | "twist" => &["kind", "value", "slope"],
        "two-twist" => &["kind", "u", "v"],
        "normalization" => &["kind", "a", "b"],
        "reparam" => &["kind", "coeffs"],
        _ => &["kind"],
    };
    if let Some(k) = kv.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(YbeError::TransformFile(format!("key '{k}' not valid for kind '{kind}'")));
    }
    Ok(match kind {
        "lbt" => {
            let (v0, v1) = path()?;
            TransformSpec::linear_lbt(v0, v1)
        }
        "twist" => {
            let (v0, v1) = path()?;
            TransformSpec::linear_twist(v0, v1)
        }
        "two-twist" => {
            let (u, v) = (parse_matrix(get("u")?)?, parse_matrix(get("v")?)?);
            if u.rows() != v.rows() {
                return Err(YbeError::TransformFile("u and v differ in size".into()));
            }
            TransformSpec::TwoTwist { u, v }
        }
        "normalization" => TransformSpec::exp_normalization(scalar("a")?, scalar("b")?),
        "reparam" => {
            let coeffs = get("coeffs")?
                .split(',')
                .map(|x| crate::catalog::presets::parse_complex(x).map_err(|e| YbeError::TransformFile(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            TransformSpec::polynomial_reparam(coeffs)
        }
        "prp" => TransformSpec::Discrete(DiscreteMap::Conjugate),
        "transpose" => TransformSpec::Discrete(DiscreteMap::Transpose),
        "ptp" => TransformSpec::Discrete(DiscreteMap::ConjugateTranspose),
        other => return Err(YbeError::TransformFile(format!("unknown kind '{other}'"))),
    })
}

fn site1(m: &CMat) -> CMat {
    m.kron(&CMat::identity(m.rows()))
}

fn site2(m: &CMat) -> CMat {
    CMat::identity(m.rows()).kron(m)
}

/// α(θ) = tr(P R(θ,θ)) / n².
fn regularity_coefficient(r: &REval, t: C64) -> Result<C64> {
    let m = r(t, t)?;
    let n = (m.rows() as f64).sqrt().round() as usize;
    let alpha = swap(n).matmul(&m).trace() / (n * n) as f64;
    if alpha.norm() == 0.0 {
        return Err(YbeError::DomainViolation {
            model: "discrete map".into(),
            point: t.to_string(),
            reason: "regularity coefficient vanishes".into(),
        });
    }
    Ok(alpha)
}

pub fn apply_to_r(t: &TransformSpec, r: REval) -> REval {
    match t.clone() {
        TransformSpec::Lbt(v) => Arc::new(move |a, b| {
            let w = (v.value)(a).kron(&(v.value)(b));
            Ok(w.matmul(&r(a, b)?).matmul(&invert(&w)?))
        }),
        TransformSpec::Twist(u) => Arc::new(move |a, b| {
            let left = site2(&(u.value)(a));
            let right = invert(&site1(&(u.value)(b)))?;
            Ok(left.matmul(&r(a, b)?).matmul(&right))
        }),
        TransformSpec::TwoTwist { u, v } => {
            let left = site1(&u).matmul(&site2(&v));
            Arc::new(move |a, b| {
                let right = invert(&site1(&v).matmul(&site2(&u)))?;
                Ok(left.matmul(&r(a, b)?).matmul(&right))
            })
        }
        TransformSpec::Normalization { g, .. } => Arc::new(move |a, b| Ok(r(a, b)?.scale(g(a, b)))),
        TransformSpec::Reparameterization { g, .. } => Arc::new(move |a, b| r(g(a), g(b))),
        TransformSpec::Discrete(DiscreteMap::Transpose) => Arc::new(move |a, b| Ok(r(a, b)?.transpose())),
        TransformSpec::Discrete(d) => Arc::new(move |a, b| {
            // Outside difference form the parity maps need u ↔ v; the α ratio
            // keeps the density free of an identity shift.
            let m = r(b, a)?;
            let p = swap((m.rows() as f64).sqrt().round() as usize);
            let m = if d == DiscreteMap::ConjugateTranspose { m.transpose() } else { m };
            let g = regularity_coefficient(&r, b)? / regularity_coefficient(&r, a)?;
            Ok(p.matmul(&m).matmul(&p).scale(g))
        }),
    }
}

pub fn apply_to_h(t: &TransformSpec, h: HEval) -> HEval {
    match t.clone() {
        TransformSpec::Lbt(v) => Arc::new(move |th| {
            let vt = (v.value)(th);
            let vinv = invert(&vt)?;
            let w = vt.kron(&vt);
            let a = (v.deriv)(th).matmul(&vinv);
            let mut out = w.matmul(&h(th)?).matmul(&vinv.kron(&vinv));
            out -= &(&site1(&a) - &site2(&a));
            Ok(out)
        }),
        TransformSpec::Twist(u) => Arc::new(move |th| {
            let u1 = site1(&(u.value)(th));
            let u1inv = invert(&u1)?;
            let du1 = site1(&(u.deriv)(th));
            Ok(&u1.matmul(&h(th)?).matmul(&u1inv) + &du1.matmul(&u1inv))
        }),
        TransformSpec::TwoTwist { u, v } => {
            let w = v.kron(&u);
            Arc::new(move |th| Ok(w.matmul(&h(th)?).matmul(&invert(&w)?)))
        }
        TransformSpec::Normalization { dg, .. } => Arc::new(move |th| {
            let m = h(th)?;
            Ok(&m + &CMat::identity(m.rows()).scale(dg(th)))
        }),
        TransformSpec::Reparameterization { g, dg } => Arc::new(move |th| Ok(h(g(th))?.scale(dg(th)))),
        TransformSpec::Discrete(d) => Arc::new(move |th| {
            let m = h(th)?;
            let p = swap((m.rows() as f64).sqrt().round() as usize);
            Ok(match d {
                DiscreteMap::Conjugate => -(&p.matmul(&m).matmul(&p)),
                DiscreteMap::Transpose => p.matmul(&m.transpose()).matmul(&p),
                DiscreteMap::ConjugateTranspose => -(&m.transpose()),
            })
        }),
    }
}

/// Checks payload invariants at sampled θ: invertibility with a sane
/// condition estimate, g(θ,θ) = 1, and a monotone (hence injective)
/// reparameterization along the real direction.
pub fn validate(t: &TransformSpec, model: &ModelSpec, seed: u64) -> Result<()> {
    let n = model.local_dim;
    let points: Vec<C64> = Sampler::new(model.domain, 1, stream_seed(seed, "payload"))
        .take(5)
        .into_iter()
        .map(|s| s.0[0])
        .collect();
    let check_matrix = |m: &CMat, what: &str| -> Result<()> {
        if m.rows() != n || m.cols() != n {
            return Err(TensorError::DimMismatch { expected: n, got: m.rows() }.into());
        }
        let k = m.condition_estimate();
        if !(k < CONDITION_LIMIT) {
            return Err(YbeError::SingularPayload(format!("{what} has condition estimate {k:.3e}")));
        }
        Ok(())
    };
    match t {
        TransformSpec::Lbt(p) | TransformSpec::Twist(p) => {
            for &th in &points {
                check_matrix(&(p.value)(th), t.label())?;
            }
        }
        TransformSpec::TwoTwist { u, v } => {
            check_matrix(u, "U")?;
            check_matrix(v, "V")?;
        }
        TransformSpec::Normalization { g, .. } => {
            for &th in &points {
                let d = (g(th, th) - ONE).norm();
                if d > 1e-12 {
                    return Err(YbeError::SingularPayload(format!("normalization g(θ,θ) − 1 = {d:.3e} at θ = {th}")));
                }
            }
        }
        TransformSpec::Reparameterization { g, .. } => {
            let (lo, hi) = model.domain.re;
            let grid: Vec<f64> = (0..=64).map(|k| g(C64::new(lo + (hi - lo) * k as f64 / 64.0, 0.0)).re).collect();
            let up = grid.windows(2).all(|w| w[1] > w[0]);
            let down = grid.windows(2).all(|w| w[1] < w[0]);
            if !(up || down) {
                return Err(YbeError::SingularPayload("reparameterization is not monotone on the domain".into()));
            }
        }
        TransformSpec::Discrete(_) => {}
    }
    Ok(())
}

/// Transformed model; evaluators are composed from the raw (unchecked)
/// source evaluators, the sampling box stays that of the source.
pub fn apply(t: &TransformSpec, model: &ModelSpec) -> ModelSpec {
    let h = apply_to_h(t, model.h_fn());
    let r = model.r_fn().map(|r| apply_to_r(t, r));
    let mut out = model.with_h_replaced(h).with_r_replaced(r).renamed(format!("{}+{}", model.id, t.label()));
    if !matches!(t, TransformSpec::Discrete(_)) && model.form == Form::Difference {
        out.form = Form::NonDifference;
    }
    out
}

/// ‖[U1U2, H12] − (U̇1U2 − U1U̇2)‖ at θ.
pub fn twist_condition(u: &MatrixPayload, h: &HEval, theta: C64) -> Result<f64> {
    let (ut, dut) = ((u.value)(theta), (u.deriv)(theta));
    let (u1, u2, du1, du2) = (site1(&ut), site2(&ut), site1(&dut), site2(&dut));
    let uu = u1.matmul(&u2);
    let hm = h(theta)?;
    let lhs = &uu.matmul(&hm) - &hm.matmul(&uu);
    let rhs = &du1.matmul(&u2) - &u1.matmul(&du2);
    Ok((&lhs - &rhs).max_norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// The check must pass for the transform to count as closed.
    Asserted,
    /// Run for information only.
    NotAsserted,
    /// Twist violating the twist condition: nothing is guaranteed.
    NotGuaranteed,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub transform: String,
    /// Max twist-condition residual for twists, absent otherwise.
    pub twist_condition: Option<f64>,
    pub expectations: Vec<(CheckName, Expectation)>,
    pub report: VerificationReport,
    /// False for non-standard twists and for any failing asserted check.
    pub passed: bool,
}

impl ClosureReport {
    pub fn expectation(&self, name: CheckName) -> Option<Expectation> {
        self.expectations.iter().find(|(c, _)| *c == name).map(|(_, e)| *e)
    }
}

/// Tolerance above which a twist counts as non-standard.
pub const TWIST_CONDITION_TOL: f64 = 1e-8;

const CLOSURE_CHECKS: [CheckName; 8] = [
    CheckName::Ybe,
    CheckName::Regularity,
    CheckName::Braiding,
    CheckName::Hamiltonian,
    CheckName::Expansion,
    CheckName::Sutherland,
    CheckName::Boost,
    CheckName::Transfer,
];

/// Runs the verification suite on the transformed model.
pub fn closure_suite(t: &TransformSpec, model: &ModelSpec, cfg: &SuiteConfig) -> Result<ClosureReport> {
    let seed = cfg.seed;
    validate(t, model, seed)?;
    let transformed = apply(t, model);
    let twist_condition = match t {
        TransformSpec::Twist(u) => {
            let h = model.h_fn();
            let mut worst: f64 = 0.0;
            for s in Sampler::new(model.domain, 1, stream_seed(seed, "twist")).take(5) {
                worst = worst.max(twist_condition(u, &h, s.0[0])?);
            }
            Some(worst)
        }
        TransformSpec::TwoTwist { u, v } => {
            let h = model.h_fn();
            let mut worst: f64 = 0.0;
            for m in [u, v] {
                let p = MatrixPayload::constant(m.clone());
                for s in Sampler::new(model.domain, 1, stream_seed(seed, "twist")).take(5) {
                    worst = worst.max(twist_condition(&p, &h, s.0[0])?);
                }
            }
            Some(worst)
        }
        _ => None,
    };
    let standard = twist_condition.map_or(true, |r| r <= TWIST_CONDITION_TOL);
    let expectations: Vec<(CheckName, Expectation)> = CLOSURE_CHECKS
        .iter()
        .map(|&c| {
            let e = if !standard {
                Expectation::NotGuaranteed
            } else if t.is_twist() && matches!(c, CheckName::Regularity | CheckName::Braiding | CheckName::Expansion) {
                Expectation::NotAsserted
            } else {
                Expectation::Asserted
            };
            (c, e)
        })
        .collect();
    let report = run_checks(&transformed, cfg, &CLOSURE_CHECKS);
    let passed = standard && expectations.iter().all(|(c, e)| {
        *e != Expectation::Asserted || report.check(*c).is_some_and(|r| matches!(r.status, Status::Pass | Status::Skipped))
    });
    Ok(ClosureReport { transform: t.label().to_string(), twist_condition, expectations, report, passed })
}

fn diag2(a: C64, b: C64) -> CMat {
    CMat::diag(&[a, b])
}

/// V(θ) = exp(½ H−(θ) σz) with H± = (H1 ± H2)/2, the basis change that
/// equalizes the diagonal of the non-difference XXZ density.
pub fn xxz_basis_change(p: &Presets) -> MatrixPayload {
    let (h1, h2) = (p.func("xxznd.h1"), p.func("xxznd.h2"));
    let (a1, a2) = (h1, h2);
    let minus = move |t: C64| (a1.anti(t) - a2.anti(t)) / 2.0;
    let dminus = move |t: C64| (h1.value(t) - h2.value(t)) / 2.0;
    let m2 = minus;
    MatrixPayload::new(
        Arc::new(move |t| {
            let x = minus(t) / 2.0;
            diag2(x.exp(), (-x).exp())
        }),
        Arc::new(move |t| {
            let x = m2(t) / 2.0;
            let d = dminus(t) / 2.0;
            diag2(d * x.exp(), -d * (-x).exp())
        }),
    )
}

/// Twist diag(√c4, √c3).
pub fn xxz_twist(p: &Presets) -> MatrixPayload {
    let (c3, c4) = (p.constant("xxznd.c3"), p.constant("xxznd.c4"));
    MatrixPayload::constant(diag2(c4.sqrt(), c3.sqrt()))
}

/// θ ↦ H+(θ) = (H1 + H2)/2 with derivative h+.
pub fn xxz_reparameterization(p: &Presets) -> TransformSpec {
    let (h1, h2) = (p.func("xxznd.h1"), p.func("xxznd.h2"));
    TransformSpec::Reparameterization {
        g: Arc::new(move |t| (h1.anti(t) + h2.anti(t)) / 2.0),
        dg: Arc::new(move |t| (h1.value(t) + h2.value(t)) / 2.0),
    }
}

/// The three inverse identifications taking the constant XXZ R-matrix
/// (hopping c = √c3√c4) to the non-difference one: untwist, reparameterize
/// by H+, undo the basis change.
pub fn xxz_chain_steps(p: &Presets) -> [TransformSpec; 3] {
    [
        TransformSpec::Twist(xxz_twist(p).inverse()),
        xxz_reparameterization(p),
        TransformSpec::Lbt(xxz_basis_change(p).inverse()),
    ]
}

pub fn xxz_constant_r(p: &Presets) -> REval {
    let c = p.constant("xxznd.c3").sqrt() * p.constant("xxznd.c4").sqrt();
    Arc::new(move |u, v| Ok(xxz_r(c, u - v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainResult {
    /// Max relative deviation of the reduced R from the closed form.
    pub residual: f64,
    pub samples: usize,
}

/// Applies the reduction chain and compares with the closed-form
/// non-difference R at sampled (u, v).
pub fn xxz_reduction_chain(p: &Presets, seed: u64, samples: usize) -> Result<ChainResult> {
    let mut r = xxz_constant_r(p);
    for step in xxz_chain_steps(p) {
        r = apply_to_r(&step, r);
    }
    let target = xxz_nondiff_r(p.constant("xxznd.c3"), p.constant("xxznd.c4"), p.func("xxznd.h1"), p.func("xxznd.h2"));
    let domain = crate::catalog::DEFAULT_DOMAIN;
    let mut worst: f64 = 0.0;
    for s in Sampler::new(domain, 2, stream_seed(seed, "xxz-chain")).take(samples) {
        let (u, v) = (s.0[0], s.0[1]);
        let (a, b) = (r(u, v)?, target(u, v)?);
        worst = worst.max(crate::cmat::relative_residual(&a, &b, 1.0));
    }
    Ok(ChainResult { residual: worst, samples })
}

/// Compares the su22 model-5 density, restricted to each 4-dim block
/// spanned by {φa, ψβ}, with the general six-vertex-B density after the
/// constant basis flip V = σx and the identification h3 → g, h4 → h,
/// (σz⊗1 + 1⊗σz) coefficient → −f/2. Returns the max entry deviation.
pub fn su22_m5_embedding_residual(f: C64, g: C64, h: C64) -> Result<f64> {
    let six_vb = general_two_site([ZERO, ZERO, g, h, -f / 2.0, ZERO, ZERO, ZERO]);
    let flip = MatrixPayload::constant(CMat::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]));
    let mapped = apply_to_h(&TransformSpec::Lbt(flip), Arc::new(move |_| Ok(six_vb.clone())))(ZERO)?;
    let point = Su22Point::constant(ZERO, f, g, h, ZERO, ZERO, ZERO, ZERO, 1.0);
    let full = su22_table_density(5, &point);
    let mut worst: f64 = 0.0;
    for phi in [0usize, 1] {
        for psi in [2usize, 3] {
            let basis = [phi, psi];
            let block = CMat::from_fn(4, 4, |i, j| {
                let (a, b) = (basis[i / 2], basis[i % 2]);
                let (c, d) = (basis[j / 2], basis[j % 2]);
                full[(4 * a + b, 4 * c + d)]
            });
            worst = worst.max((&block - &mapped).max_norm());
        }
    }
    Ok(worst)
}
