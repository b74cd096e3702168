//! Conserved charges on a periodic chain and the transfer matrix.
//!
//! Q2 = Σ_j H_{j,j+1} and Q3 = −Σ_j [H_{j,j+1}, H_{j+1,j+2}] + ∂θ Q2 on L = 4
//! sites; the charges commute for integrable densities.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::catalog::ModelSpec;
use crate::cmat::{commutator, embed_pair, embed_range, CMat, SiteSpace};
use crate::error::{Result, YbeError};
use crate::stencil;

/// Chain length for the integrability residual.
pub const CHARGE_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone)]
pub struct ChargePair {
    pub q2: CMat,
    pub q3: CMat,
    pub theta: C64,
    pub len: usize,
    pub derivative: DerivativeSource,
}

/// Σ_j h_{j,j+1} with periodic wrap.
pub fn q2_from_density(h: &CMat, space: SiteSpace) -> Result<CMat> {
    let d = space.total_dim();
    let mut q = CMat::zeros(d, d);
    for j in 1..=space.len() {
        q += &embed_pair(h, space, j)?;
    }
    Ok(q)
}

/// −Σ_j [h_{j,j+1}, h_{j+1,j+2}], assembled from the three-site commutator.
pub fn boost_commutator_term(h: &CMat, space: SiteSpace) -> Result<CMat> {
    let n = space.local_dim();
    let id = CMat::identity(n);
    let c3 = commutator(&h.kron(&id), &id.kron(h));
    let d = space.total_dim();
    let mut q = CMat::zeros(d, d);
    for j in 1..=space.len() {
        q -= &embed_range(&c3, space, j, 3)?;
    }
    Ok(q)
}

fn chain(model: &ModelSpec) -> Result<SiteSpace> {
    Ok(SiteSpace::new(model.local_dim, CHARGE_LENGTH)?)
}

pub fn build_q2(model: &ModelSpec, theta: C64) -> Result<CMat> {
    q2_from_density(&model.eval_h(theta)?, chain(model)?)
}

/// dH/dθ, analytic if the model has it, else by central differences.
pub fn density_derivative(model: &ModelSpec, theta: C64) -> Result<(CMat, DerivativeSource)> {
    if let Some(dh) = model.eval_dh(theta) {
        return Ok((dh?, DerivativeSource::Analytic));
    }
    if !stencil::fits(&model.domain, theta) {
        return Err(YbeError::StencilOutOfDomain { model: model.id.clone(), theta });
    }
    Ok((stencil::central(|t| model.eval_h(t), theta)?, DerivativeSource::FiniteDifference))
}

pub fn build_charges(model: &ModelSpec, theta: C64) -> Result<ChargePair> {
    let space = chain(model)?;
    let h = model.eval_h(theta)?;
    let (dh, derivative) = density_derivative(model, theta)?;
    let q2 = q2_from_density(&h, space)?;
    let mut q3 = boost_commutator_term(&h, space)?;
    q3 += &q2_from_density(&dh, space)?;
    Ok(ChargePair { q2, q3, theta, len: CHARGE_LENGTH, derivative })
}

pub fn build_q3(model: &ModelSpec, theta: C64) -> Result<CMat> {
    Ok(build_charges(model, theta)?.q3)
}

/// ‖[a,b]‖ / max(1, ‖a‖‖b‖).
pub fn normalized_commutator(a: &CMat, b: &CMat) -> f64 {
    let ab = a.matmul(b);
    // b·a as (aᵀbᵀ)ᵀ so the sparse factor sits on the left.
    let ba = a.transpose().matmul(&b.transpose()).transpose();
    (&ab - &ba).max_norm() / (a.max_norm() * b.max_norm()).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integrability {
    pub residual: f64,
    pub derivative: DerivativeSource,
}

pub fn integrability_residual(model: &ModelSpec, theta: C64) -> Result<Integrability> {
    let q = build_charges(model, theta)?;
    Ok(Integrability { residual: normalized_commutator(&q.q2, &q.q3), derivative: q.derivative })
}

/// t(u,θ) = tr_a(R_{aL}(u,θ) … R_{a1}(u,θ)) on L sites.
pub fn transfer_matrix(model: &ModelSpec, u: C64, theta: C64, len: usize) -> Result<CMat> {
    if !(2..=4).contains(&len) {
        return Err(crate::cmat::TensorError::ChainTooShort(len).into());
    }
    let space = SiteSpace::new(model.local_dim, len)?;
    let r = model.eval_r(u, theta)?;
    Ok(transfer_from_r(&r, space.local_dim(), len))
}

/// Monodromy contraction. T holds R_{ak}…R_{a1} with rows (a_out, i_1..i_k)
/// and columns (a_in, j_1..j_k); each step appends one site.
pub(crate) fn transfer_from_r(r: &CMat, n: usize, len: usize) -> CMat {
    let mut t = CMat::identity(n);
    let mut block = 1;
    for _ in 0..len {
        let nb = block * n;
        let mut next = CMat::zeros(n * nb, n * nb);
        for a_out in 0..n {
            for i in 0..n {
                for b in 0..n {
                    for j in 0..n {
                        let w = r[(a_out * n + i, b * n + j)];
                        if w.norm_sqr() == 0.0 {
                            continue;
                        }
                        for a_in in 0..n {
                            for ri in 0..block {
                                for ci in 0..block {
                                    let x = t[(b * block + ri, a_in * block + ci)];
                                    next[(a_out * nb + ri * n + i, a_in * nb + ci * n + j)] += w * x;
                                }
                            }
                        }
                    }
                }
            }
        }
        t = next;
        block = nb;
    }
    let mut out = CMat::zeros(block, block);
    for a in 0..n {
        for ri in 0..block {
            for ci in 0..block {
                out[(ri, ci)] += t[(a * block + ri, a * block + ci)];
            }
        }
    }
    out
}

/// Normalized ‖[t(u,θ), t(v,θ)]‖.
pub fn transfer_commutation(model: &ModelSpec, u: C64, v: C64, theta: C64, len: usize) -> Result<f64> {
    let tu = transfer_matrix(model, u, theta, len)?;
    let tv = transfer_matrix(model, v, theta, len)?;
    Ok(normalized_commutator(&tu, &tv))
}
