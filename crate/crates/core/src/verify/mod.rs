//! Residual checks tying a density H to its R-matrix.
//!
//! Operators on the triple space: R12 = R⊗1, R23 = 1⊗R, R13 = P23 R12 P23.

pub mod conditions;
pub mod suite;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::catalog::ModelSpec;
use crate::cmat::{commutator, swap, CMat};
use crate::error::{Result, YbeError};
use crate::stencil;

pub use conditions::{condition_outcomes, hermiticity_residual, normality_residual, ConditionKind, ConditionOutcome};
pub use suite::{run_checks, run_suite, CheckName, CheckResult, Status, SuiteConfig, Tolerances, VerificationReport};

/// Embeddings of a two-site operator into the three-site space.
pub struct TripleSpace {
    n: usize,
    id: CMat,
    p23: CMat,
}

impl TripleSpace {
    pub fn new(n: usize) -> Self {
        TripleSpace { n, id: CMat::identity(n), p23: CMat::identity(n).kron(&swap(n)) }
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn op12(&self, r: &CMat) -> CMat {
        r.kron(&self.id)
    }

    pub fn op23(&self, r: &CMat) -> CMat {
        self.id.kron(r)
    }

    pub fn op13(&self, r: &CMat) -> CMat {
        self.p23.matmul(&self.op12(r)).matmul(&self.p23)
    }
}

/// Relative YBE residual for three already-evaluated R-matrices.
pub fn ybe_residual_of(n: usize, r_uv: &CMat, r_uw: &CMat, r_vw: &CMat) -> f64 {
    let s = TripleSpace::new(n);
    let (a, b, c) = (s.op12(r_uv), s.op13(r_uw), s.op23(r_vw));
    let lhs = a.matmul(&b).matmul(&c);
    let rhs = c.matmul(&b).matmul(&a);
    (&lhs - &rhs).max_norm() / lhs.max_norm().max(rhs.max_norm()).max(f64::MIN_POSITIVE)
}

/// ‖R12(u,v)R13(u,w)R23(v,w) − R23(v,w)R13(u,w)R12(u,v)‖ over the larger side.
pub fn ybe_residual(model: &ModelSpec, u: C64, v: C64, w: C64) -> Result<f64> {
    let (r_uv, r_uw, r_vw) = (model.eval_r(u, v)?, model.eval_r(u, w)?, model.eval_r(v, w)?);
    Ok(ybe_residual_of(model.local_dim, &r_uv, &r_uw, &r_vw))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient {
    pub value: C64,
    pub residual: f64,
}

/// α = tr(P R(u,u))/n² and ‖R(u,u) − αP‖ / max(1, |α|).
pub fn regularity(model: &ModelSpec, u: C64) -> Result<Coefficient> {
    let n = model.local_dim;
    let r = model.eval_r(u, u)?;
    let p = swap(n);
    let alpha = p.matmul(&r).trace() / (n * n) as f64;
    let residual = (&r - &p.scale(alpha)).max_norm() / alpha.norm().max(1.0);
    Ok(Coefficient { value: alpha, residual })
}

/// M = R(u,v)·P R(v,u) P, β = tr M / n², residual ‖M − β·1‖ / max(1, |β|).
pub fn braiding(model: &ModelSpec, u: C64, v: C64) -> Result<Coefficient> {
    let n = model.local_dim;
    let p = swap(n);
    let m = model.eval_r(u, v)?.matmul(&p.matmul(&model.eval_r(v, u)?).matmul(&p));
    let beta = m.trace() / (n * n) as f64;
    let residual = (&m - &CMat::identity(n * n).scale(beta)).max_norm() / beta.norm().max(1.0);
    Ok(Coefficient { value: beta, residual })
}

fn require_stencil(model: &ModelSpec, t: C64) -> Result<()> {
    if stencil::fits(&model.domain, t) {
        Ok(())
    } else {
        Err(YbeError::StencilOutOfDomain { model: model.id.clone(), theta: t })
    }
}

/// H = P ∂_u R(u,θ)|_{u=θ} / α(θ).
pub fn recover_density(model: &ModelSpec, theta: C64) -> Result<CMat> {
    require_stencil(model, theta)?;
    let d = stencil::central(|u| model.eval_r(u, theta), theta)?;
    let alpha = regularity(model, theta)?.value;
    if alpha.norm() == 0.0 {
        return Err(YbeError::DomainViolation {
            model: model.id.clone(),
            point: theta.to_string(),
            reason: "regularity coefficient vanishes".into(),
        });
    }
    Ok(swap(model.local_dim).matmul(&d).scale(alpha.inv()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Exact,
    ModuloIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovery {
    pub residual: f64,
    pub comparison: Comparison,
    /// Scalar c with H_recovered ≈ H + c·1 (zero for exact matches).
    pub shift: C64,
}

/// Compares a recovered density with the expected one, exactly first and
/// then modulo a multiple of the identity.
pub fn compare_densities(recovered: &CMat, expected: &CMat, tol: f64) -> Recovery {
    let scale = expected.max_norm().max(1.0);
    let diff = recovered - expected;
    let exact = diff.max_norm() / scale;
    if exact <= tol {
        return Recovery { residual: exact, comparison: Comparison::Exact, shift: C64::new(0.0, 0.0) };
    }
    let d = diff.rows();
    let shift = diff.trace() / d as f64;
    let residual = (&diff - &CMat::identity(d).scale(shift)).max_norm() / scale;
    Recovery { residual, comparison: Comparison::ModuloIdentity, shift }
}

pub fn hamiltonian_recovery(model: &ModelSpec, theta: C64, tol: f64) -> Result<Recovery> {
    let rec = recover_density(model, theta)?;
    Ok(compare_densities(&rec, &model.eval_h(theta)?, tol))
}

/// ‖R(u,v)/α(v) − P(1 + δ H((u+v)/2))‖ / δ² with δ = u − v.
/// At δ = 0 this is the regularity residual.
pub fn expansion_check(model: &ModelSpec, u: C64, v: C64) -> Result<f64> {
    let delta = u - v;
    let reg = regularity(model, v)?;
    if delta.norm() == 0.0 {
        return Ok(reg.residual);
    }
    let n = model.local_dim;
    let r = model.eval_r(u, v)?.scale(reg.value.inv());
    let h = model.eval_h((u + v) / 2.0)?;
    let approx = swap(n).matmul(&(&CMat::identity(n * n) + &h.scale(delta)));
    Ok((&r - &approx).max_norm() / delta.norm_sqr())
}

/// Both Sutherland equations, each as ‖lhs − rhs‖ over ‖R R‖·max(1, ‖H‖):
///   [R13 R23, H12(u)] = Ṙ13 R23 − R13 Ṙ23
///   [R13 R12, H23(v)] = R13 R′12 − R′13 R12
/// with R = R(u,v), dots/primes derivatives in the first/second argument.
pub fn sutherland_residual(model: &ModelSpec, u: C64, v: C64) -> Result<(f64, f64)> {
    require_stencil(model, u)?;
    require_stencil(model, v)?;
    let s = TripleSpace::new(model.local_dim);
    let r = model.eval_r(u, v)?;
    let r_dot = stencil::central(|x| model.eval_r(x, v), u)?;
    let r_prime = stencil::central(|y| model.eval_r(u, y), v)?;
    let (hu, hv) = (model.eval_h(u)?, model.eval_h(v)?);

    let (r12, r13, r23) = (s.op12(&r), s.op13(&r), s.op23(&r));
    let (d13, d23) = (s.op13(&r_dot), s.op23(&r_dot));
    let (p12, p13) = (s.op12(&r_prime), s.op13(&r_prime));

    let a = r13.matmul(&r23);
    let lhs1 = commutator(&a, &s.op12(&hu));
    let rhs1 = &d13.matmul(&r23) - &r13.matmul(&d23);
    let res1 = (&lhs1 - &rhs1).max_norm() / (a.max_norm() * hu.max_norm().max(1.0)).max(f64::MIN_POSITIVE);

    let b = r13.matmul(&r12);
    let lhs2 = commutator(&b, &s.op23(&hv));
    let rhs2 = &r13.matmul(&p12) - &p13.matmul(&r12);
    let res2 = (&lhs2 - &rhs2).max_norm() / (b.max_norm() * hv.max_norm().max(1.0)).max(f64::MIN_POSITIVE);
    Ok((res1, res2))
}
