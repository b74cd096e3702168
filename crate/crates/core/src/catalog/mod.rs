//! Registry of Hamiltonian densities and R-matrices.
//!
//! Every entry binds an id to an evaluator for the density H(θ), optionally an
//! R-matrix R(u,v) and an analytic dH/dθ, plus the box its spectral
//! parameters are sampled from.

pub mod dual;
pub mod four;
pub mod nine;
pub mod presets;
pub mod sixteen;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::cmat::{swap, CMat, ZERO};
use crate::error::{Result, YbeError};
pub use presets::{default_presets, parse_complex, Presets, ScalarFn};

pub type HEval = Arc<dyn Fn(C64) -> Result<CMat> + Send + Sync>;
pub type REval = Arc<dyn Fn(C64, C64) -> Result<CMat> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Difference,
    QuasiDifference,
    NonDifference,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Difference => "difference",
            Form::QuasiDifference => "quasi-difference",
            Form::NonDifference => "non-difference",
        })
    }
}

/// Margin around the sampling box inside which evaluation is still allowed,
/// so that derivative stencils at the box edge fit.
pub const DOMAIN_PAD: f64 = 0.1;

/// Rectangle in the complex plane used for every spectral variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Domain {
    pub const fn real(lo: f64, hi: f64) -> Self {
        Domain { re: (lo, hi), im: (0.0, 0.0) }
    }

    pub const fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        Domain { re, im }
    }

    pub fn contains(&self, z: C64) -> bool {
        z.re >= self.re.0 && z.re <= self.re.1 && z.im >= self.im.0 && z.im <= self.im.1
    }

    pub fn contains_padded(&self, z: C64) -> bool {
        z.re >= self.re.0 - DOMAIN_PAD
            && z.re <= self.re.1 + DOMAIN_PAD
            && z.im >= self.im.0 - DOMAIN_PAD
            && z.im <= self.im.1 + DOMAIN_PAD
    }

    /// Point with fractional coordinates (a, b) ∈ [0,1]² inside the box.
    pub fn point(&self, a: f64, b: f64) -> C64 {
        C64::new(self.re.0 + a * (self.re.1 - self.re.0), self.im.0 + b * (self.im.1 - self.im.0))
    }

    pub fn center(&self) -> C64 {
        self.point(0.5, 0.5)
    }
}

pub const DEFAULT_DOMAIN: Domain = Domain::new((0.05, 0.6), (-0.1, 0.1));
pub const DEFAULT_CURVATURE: f64 = 100.0;

#[derive(Clone)]
pub struct ModelSpec {
    pub id: String,
    pub local_dim: usize,
    pub form: Form,
    pub params: Vec<(String, C64)>,
    pub preset: String,
    pub domain: Domain,
    /// Bound on |R(u,v) − P(1 + δH)|/δ² used by the expansion check.
    pub curvature: f64,
    pub(crate) h: HEval,
    pub(crate) dh: Option<HEval>,
    pub(crate) r: Option<REval>,
}

impl fmt::Debug for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelSpec")
            .field("id", &self.id)
            .field("local_dim", &self.local_dim)
            .field("form", &self.form)
            .field("has_r", &self.r.is_some())
            .field("has_dh", &self.dh.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSummary {
    pub id: String,
    pub local_dim: usize,
    pub form: Form,
    pub has_r: bool,
    pub analytic_dh: bool,
    pub preset: String,
}

impl ModelSpec {
    pub fn new(id: &str, local_dim: usize, form: Form, h: HEval) -> Self {
        ModelSpec {
            id: id.to_string(),
            local_dim,
            form,
            params: Vec::new(),
            preset: String::new(),
            domain: DEFAULT_DOMAIN,
            curvature: DEFAULT_CURVATURE,
            h,
            dh: None,
            r: None,
        }
    }

    pub fn with_r(mut self, r: REval) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_dh(mut self, dh: HEval) -> Self {
        self.dh = Some(dh);
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_params(mut self, params: &[(&str, C64)]) -> Self {
        self.params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self
    }

    pub fn with_preset(mut self, preset: &str) -> Self {
        self.preset = preset.to_string();
        self
    }

    pub fn with_curvature(mut self, curvature: f64) -> Self {
        self.curvature = curvature;
        self
    }

    /// Replaces the id, keeping everything else.
    pub fn renamed(mut self, id: String) -> Self {
        self.id = id;
        self
    }

    pub fn has_r(&self) -> bool {
        self.r.is_some()
    }

    pub fn has_analytic_dh(&self) -> bool {
        self.dh.is_some()
    }

    pub fn summary(&self) -> ModelSummary {
        ModelSummary {
            id: self.id.clone(),
            local_dim: self.local_dim,
            form: self.form,
            has_r: self.has_r(),
            analytic_dh: self.has_analytic_dh(),
            preset: self.preset.clone(),
        }
    }

    fn check_point(&self, z: C64) -> Result<()> {
        if self.domain.contains_padded(z) {
            Ok(())
        } else {
            Err(YbeError::DomainViolation {
                model: self.id.clone(),
                point: z.to_string(),
                reason: "outside the sampling box".into(),
            })
        }
    }

    pub fn eval_h(&self, theta: C64) -> Result<CMat> {
        self.check_point(theta)?;
        (self.h)(theta)
    }

    pub fn eval_r(&self, u: C64, v: C64) -> Result<CMat> {
        let r = self.r.as_ref().ok_or_else(|| YbeError::MissingR(self.id.clone()))?;
        self.check_point(u)?;
        self.check_point(v)?;
        r(u, v)
    }

    /// Analytic dH/dθ if the model supplies one.
    pub fn eval_dh(&self, theta: C64) -> Option<Result<CMat>> {
        let dh = self.dh.as_ref()?;
        Some(self.check_point(theta).and_then(|_| dh(theta)))
    }

    /// Evaluators without the sampling-box check, for composition.
    pub fn h_fn(&self) -> HEval {
        self.h.clone()
    }

    pub fn r_fn(&self) -> Option<REval> {
        self.r.clone()
    }

    pub fn dh_fn(&self) -> Option<HEval> {
        self.dh.clone()
    }

    /// Copy with a different density evaluator (and no analytic derivative).
    pub fn with_h_replaced(&self, h: HEval) -> ModelSpec {
        let mut m = self.clone();
        m.h = h;
        m.dh = None;
        m
    }

    pub fn with_r_replaced(&self, r: Option<REval>) -> ModelSpec {
        let mut m = self.clone();
        m.r = r;
        m
    }
}

pub(crate) fn domain_error(model: &str, z: C64, reason: &str) -> YbeError {
    YbeError::DomainViolation { model: model.to_string(), point: z.to_string(), reason: reason.to_string() }
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// 4x4 eight-vertex layout [[r1,0,0,r8],[0,r2,r6,0],[0,r5,r3,0],[r7,0,0,r4]].
pub fn eight_vertex(r: [C64; 8]) -> CMat {
    let [r1, r2, r3, r4, r5, r6, r7, r8] = r;
    CMat::from_vec(4, 4, vec![r1, ZERO, ZERO, r8, ZERO, r2, r6, ZERO, ZERO, r5, r3, ZERO, r7, ZERO, ZERO, r4])
}

/// h1 1 + h2(σz⊗1 − 1⊗σz) + h3 σ+⊗σ− + h4 σ−⊗σ+ + h5(σz⊗1 + 1⊗σz) + h6 σz⊗σz + h7 σ−⊗σ− + h8 σ+⊗σ+.
pub fn general_two_site(h: [C64; 8]) -> CMat {
    let [h1, h2, h3, h4, h5, h6, h7, h8] = h;
    eight_vertex([
        h1 + h5 * 2.0 + h6,
        h1 + h2 * 2.0 - h6,
        h1 - h2 * 2.0 - h6,
        h1 - h5 * 2.0 + h6,
        h4,
        h3,
        h7,
        h8,
    ])
}

/// 1-based matrix unit E_ij on C^3 ⊗ C^3.
pub fn e9(i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(9, 9);
    m[(i - 1, j - 1)] = c(1.0);
    m
}

pub fn perm(n: usize) -> CMat {
    swap(n)
}

/// Registry of all models for the given presets, sorted by id.
pub fn all_models(p: &Presets) -> Vec<ModelSpec> {
    let mut models = Vec::new();
    models.extend(four::models(p));
    models.extend(nine::models(p));
    models.extend(sixteen::models(p));
    models.sort_by(|a, b| a.id.cmp(&b.id));
    models
}

pub fn list_models() -> Vec<ModelSummary> {
    all_models(&default_presets()).iter().map(ModelSpec::summary).collect()
}

pub fn find_model(p: &Presets, id: &str) -> Result<ModelSpec> {
    all_models(p).into_iter().find(|m| m.id == id).ok_or_else(|| YbeError::UnknownModel(id.to_string()))
}

pub fn model_ids() -> Vec<String> {
    list_models().into_iter().map(|m| m.id).collect()
}

/// sin(ωx)/ω computed from ω² so that the ω → 0 limit is smooth.
pub fn sinc_omega(omega2: C64, x: C64) -> C64 {
    let w2x2 = omega2 * x * x;
    if w2x2.norm() < 1e-4 {
        // x(1 − w²x²/6 + w⁴x⁴/120 − w⁶x⁶/5040)
        x * (c(1.0) - w2x2 / 6.0 * (c(1.0) - w2x2 / 20.0 * (c(1.0) - w2x2 / 42.0)))
    } else {
        let w = omega2.sqrt();
        (w * x).sin() / w
    }
}

/// cos(ωx) from ω² (even in ω, so the branch of the root is irrelevant).
pub fn cos_omega(omega2: C64, x: C64) -> C64 {
    (omega2.sqrt() * x).cos()
}
