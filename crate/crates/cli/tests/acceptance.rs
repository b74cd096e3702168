//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use ybelab_core::boost::{integrability_residual, transfer_commutation};
use ybelab_core::catalog::four::xxz_ansatz;
use ybelab_core::catalog::sixteen::su22_coefficients;
use ybelab_core::catalog::{all_models, default_presets, find_model, Form, HEval, ModelSpec, Presets};
use ybelab_core::cmat::CMat;
use ybelab_core::sampling::{stream_seed, Sampler};
use ybelab_core::stencil;
use ybelab_core::transforms::{
    closure_suite, su22_m5_embedding_residual, xxz_reduction_chain, DiscreteMap, MatrixPayload, TransformSpec,
};
use ybelab_core::verify::{
    conditions::has_conditions, condition_outcomes, run_checks, CheckName, ConditionKind, Status, SuiteConfig,
};

#[path = "../../core/tests/common/elliptic_cases.rs"]
mod elliptic_cases;

const SEED: u64 = 20240611;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn r_models(p: &Presets) -> Vec<ModelSpec> {
    all_models(p).into_iter().filter(|m| m.has_r()).collect()
}

/// Max residual of one check over a set of models, plus any model that did not pass.
fn sweep(models: &[ModelSpec], check: CheckName, cfg: &SuiteConfig) -> (f64, Vec<String>) {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for m in models {
        let r = run_checks(m, cfg, &[check]);
        let res = &r.checks[0];
        if res.status != Status::Pass {
            bad.push(format!("{}: {:?} {}", m.id, res.status, res.error.clone().unwrap_or_default()));
        }
        worst = worst.max(res.residual.unwrap_or(f64::NAN));
    }
    (worst, bad)
}

fn ybe_validity(p: &Presets) -> Outcome {
    let models = r_models(p);
    let cfg = SuiteConfig { samples: Some(20), ..SuiteConfig::with_seed(SEED) };
    let (worst, bad) = sweep(&models, CheckName::Ybe, &cfg);
    outcome(bad.is_empty(), format!("YBE on {} R-matrices x 20 triples, max {worst:.1e} (tol 1e-8) {bad:?}", models.len()))
}

fn regularity_and_recovery(p: &Presets) -> Outcome {
    let models = r_models(p);
    let cfg = SuiteConfig { samples: Some(10), ..SuiteConfig::with_seed(SEED) };
    let (reg, bad_reg) = sweep(&models, CheckName::Regularity, &cfg);
    let (rec, bad_rec) = sweep(&models, CheckName::Hamiltonian, &SuiteConfig::with_seed(SEED));
    let xxz = find_model(p, "xxz-nondiff").unwrap();
    let policy = run_checks(&xxz, &SuiteConfig::with_seed(SEED), &[CheckName::Hamiltonian]).checks[0].notes.join(",");
    outcome(
        bad_reg.is_empty() && bad_rec.is_empty(),
        format!("regularity max {reg:.1e} (tol 1e-9), recovery max {rec:.1e} (tol 1e-6), xxz-nondiff compared {policy} {bad_reg:?} {bad_rec:?}"),
    )
}

fn xxz_ansatz_model(h3_shift: f64) -> ModelSpec {
    let h: HEval = Arc::new(move |t: C64| {
        let (a, b) = (c(1.0), t + 1.0);
        Ok(xxz_ansatz(a, b, (a + b) + t * h3_shift, (a + b) * 0.25))
    });
    ModelSpec::new("xxz-ansatz", 2, Form::NonDifference, h)
}

fn integrability(p: &Presets) -> Outcome {
    let models = all_models(p);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for m in &models {
        for s in Sampler::new(m.domain, 1, stream_seed(SEED, &format!("{}/accept-boost", m.id))).take(5) {
            match integrability_residual(m, s.0[0]) {
                Ok(r) if r.residual <= 1e-6 => worst = worst.max(r.residual),
                Ok(r) => bad.push(format!("{}: {:.1e}", m.id, r.residual)),
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    let control = integrability_residual(&xxz_ansatz_model(0.3), c(0.3)).unwrap().residual;
    let on_manifold = integrability_residual(&xxz_ansatz_model(0.0), c(0.3)).unwrap().residual;
    outcome(
        bad.is_empty() && control >= 1e-3 && on_manifold <= 1e-6,
        format!(
            "[Q2,Q3] on {} densities x 5 theta, max {worst:.1e} (tol 1e-6); off-manifold h3 control {control:.1e} (>= 1e-3) {bad:?}",
            models.len()
        ),
    )
}

fn model7_constraints(p: &Presets) -> Outcome {
    let m = find_model(p, "su22-m7-H").unwrap();
    let entries = |t: C64| su22_coefficients(&m.eval_h(t).unwrap());
    let mut alg: f64 = 0.0;
    let mut ode: f64 = 0.0;
    for s in Sampler::new(m.domain, 1, stream_seed(SEED, "m7")).take(8) {
        let t = s.0[0];
        let h = entries(t);
        let scale = h.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let (h1, h2, h3, h5, h7, h8, h9) = (h[0], h[1], h[2], h[4], h[6], h[7], h[8]);
        let sum = h5 + h7;
        for r in [h1 + h8, h2 + h9, h3 - (h5 * h7 - h9 * h9), h8 - (sum * sum / (h9 * 4.0) - h9)] {
            alg = alg.max(r.norm() / scale);
        }
        let d = stencil::central(|x| Ok(CMat::diag(&entries(x))), t).unwrap();
        let (d5, d7, d9) = (d[(4, 4)], d[(6, 6)], d[(8, 8)]);
        let rhs5 = h7 * h9 * 2.0 - h5 * sum * sum / (h9 * 2.0);
        let rhs7 = h7 * sum * sum / (h9 * 2.0) - h5 * h9 * 2.0;
        let rhs9 = h7 * h7 - h5 * h5;
        for r in [d5 - rhs5, d7 - rhs7, d9 - rhs9] {
            ode = ode.max(r.norm() / scale);
        }
    }
    outcome(
        alg <= 1e-9 && ode <= 1e-6,
        format!("elliptic entries: algebraic constraints max {alg:.1e} (tol 1e-9), ODE system by finite differences max {ode:.1e} (tol 1e-6)"),
    )
}

fn symmetric_twist(id: &str) -> CMat {
    let (a, b) = (C64::new(1.3, 0.2), C64::new(0.8, -0.4));
    match id {
        "so4" => CMat::from_real(&[&[0.6, -0.8, 0.0, 0.0], &[0.8, 0.6, 0.0, 0.0], &[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]),
        "su22-m2" => CMat::diag(&[a, a.inv(), b, b.inv()]),
        "15v-c1-m2" => CMat::diag(&[a, b, c(0.7)]),
        _ => CMat::diag(&[a, b]),
    }
}

fn fixed_matrix(n: usize, salt: f64) -> CMat {
    CMat::from_fn(n, n, |i, j| C64::new(((i * n + j) as f64 * 0.37 + salt).sin(), ((i + 2 * j) as f64 * 0.61 - salt).cos()))
}

fn transform_variants(m: &ModelSpec) -> Vec<TransformSpec> {
    let n = m.local_dim;
    let u = symmetric_twist(&m.id);
    vec![
        TransformSpec::linear_lbt(&CMat::identity(n) + &fixed_matrix(n, 0.1).scale_re(0.3), fixed_matrix(n, 0.7).scale_re(0.2)),
        TransformSpec::Lbt(MatrixPayload::constant(&CMat::identity(n) + &fixed_matrix(n, 1.3).scale_re(0.4))),
        TransformSpec::linear_twist(u.clone(), CMat::zeros(n, n)),
        TransformSpec::TwoTwist { u: u.clone(), v: u.inverse().unwrap().scale(c(1.7)) },
        TransformSpec::exp_normalization(C64::new(0.4, 0.1), c(-0.3)),
        TransformSpec::polynomial_reparam(vec![c(0.0), c(1.0), c(0.0), c(1.0)]),
        TransformSpec::Discrete(DiscreteMap::Conjugate),
        TransformSpec::Discrete(DiscreteMap::Transpose),
        TransformSpec::Discrete(DiscreteMap::ConjugateTranspose),
    ]
}

fn closure(p: &Presets) -> Outcome {
    let cfg = SuiteConfig::with_seed(SEED);
    let mut count = 0;
    let mut bad = Vec::new();
    for id in ["6vB", "xxz-nondiff", "15v-c1-m2", "so4", "su22-m2"] {
        let m = find_model(p, id).unwrap();
        for t in transform_variants(&m) {
            count += 1;
            match closure_suite(&t, &m, &cfg) {
                Ok(rep) => {
                    let core_ok = [CheckName::Ybe, CheckName::Regularity, CheckName::Hamiltonian]
                        .iter()
                        .all(|&k| rep.report.check(k).is_some_and(|r| r.status == Status::Pass));
                    if !(rep.passed && core_ok) {
                        bad.push(format!("{id}+{}", t.label()));
                    }
                }
                Err(e) => bad.push(format!("{id}+{}: {e}", t.label())),
            }
        }
    }
    let chain = xxz_reduction_chain(p, SEED, 20).unwrap();
    outcome(
        bad.is_empty() && chain.residual <= 1e-9,
        format!("{count} transformed pairs (9 variants x 5 models) pass YBE/regularity/recovery; XXZ reduction chain {:.1e} (tol 1e-9) {bad:?}", chain.residual),
    )
}

fn condition_tables() -> Outcome {
    let ids: Vec<String> = ybelab_core::catalog::model_ids().into_iter().filter(|id| has_conditions(id)).collect();
    let (mut sat, mut ctl) = (0.0f64, f64::INFINITY);
    let mut rows = 0;
    for id in &ids {
        for kind in [ConditionKind::Hermiticity, ConditionKind::Normality] {
            for row in condition_outcomes(id, kind, SEED).unwrap() {
                rows += 1;
                if row.satisfied {
                    sat = sat.max(row.residual);
                } else {
                    ctl = ctl.min(row.residual);
                }
            }
        }
    }
    outcome(
        sat <= 1e-10 && ctl >= 1e-4,
        format!("{rows} rows over {} models: satisfied rows max {sat:.1e} (tol 1e-10), violated rows min {ctl:.1e} (>= 1e-4)", ids.len()),
    )
}

fn elliptic_kernel() -> Outcome {
    let deg = elliptic_cases::degeneration_error();
    let par = elliptic_cases::parity_identity_error();
    let ode = elliptic_cases::ode_error();
    outcome(
        deg <= 1e-10 && par <= 1e-10 && ode <= 1e-10,
        format!("100-point grid: degenerations {deg:.1e}, parity/identities {par:.1e}; ODE oracle on 20 points {ode:.1e} (tol 1e-10)"),
    )
}

fn transfer(p: &Presets) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut dims = Vec::new();
    let ids = ["6vB", "8vB", "15v-c1-m2", "15v-c2-m5", "so4", "su22-m8"];
    for id in ids {
        let m = find_model(p, id).unwrap();
        dims.push(m.local_dim);
        for len in [2, 3] {
            for s in Sampler::new(m.domain, 3, stream_seed(SEED, &format!("{id}/accept-transfer"))).take(3) {
                let (u, v, th) = (s.0[0], s.0[1], s.0[2]);
                worst = worst.max(transfer_commutation(&m, u, v, th, len).unwrap_or(f64::NAN));
            }
        }
    }
    dims.sort();
    dims.dedup();
    outcome(worst <= 1e-8, format!("[t(u),t(v)] for {} models (n = {dims:?}), L = 2, 3, max {worst:.1e} (tol 1e-8)", ids.len()))
}

fn embedding() -> Outcome {
    let mut worst: f64 = 0.0;
    for (f, g, h) in [
        (c(0.4), c(1.1), c(0.7)),
        (C64::new(0.3, 0.2), C64::new(-0.5, 0.9), C64::new(1.2, -0.4)),
        (c(-1.3), C64::new(0.0, 0.6), c(2.0)),
    ] {
        worst = worst.max(su22_m5_embedding_residual(f, g, h).unwrap());
    }
    outcome(worst <= 1e-10, format!("su22 model 5 blocks vs six-vertex B after sigma_x basis flip, max {worst:.1e} (tol 1e-10)"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ybelab-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut runs = Vec::new();
    for k in 0..2 {
        let path = dir.join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_ybelab"))
            .args(["suite", "all", "--seed", "1", "--json"])
            .arg(&path)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("binary runs");
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        runs.push((status.code(), v));
    }
    std::fs::remove_dir_all(&dir).ok();
    let same = runs[0].1 == runs[1].1;
    let n = runs[0].1.as_array().map_or(0, |a| a.len());
    outcome(
        same && runs[0].0 == Some(0) && runs[1].0 == Some(0),
        format!("`ybelab suite all --seed 1` twice: {n} reports, identical = {same}, exit codes {:?}/{:?}", runs[0].0, runs[1].0),
    )
}

fn main() {
    let p = default_presets();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("ybe validity", Box::new(|| ybe_validity(&p))),
        ("regularity and recovery", Box::new(|| regularity_and_recovery(&p))),
        ("integrability", Box::new(|| integrability(&p))),
        ("model 7 constraints", Box::new(|| model7_constraints(&p))),
        ("identification closure", Box::new(|| closure(&p))),
        ("hermiticity/normality tables", Box::new(condition_tables)),
        ("elliptic kernel", Box::new(elliptic_kernel)),
        ("transfer matrices", Box::new(|| transfer(&p))),
        ("embedding", Box::new(embedding)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {:<29} {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
