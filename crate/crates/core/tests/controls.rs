//! Each check must fire on deliberately broken input.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybelab_core::boost::{build_charges, integrability_residual, normalized_commutator, transfer_matrix};
use ybelab_core::catalog::four::{six_vertex_b_general, xxz_ansatz};
use ybelab_core::catalog::presets::ScalarFn;
use ybelab_core::catalog::{default_presets, find_model, Form, HEval, ModelSpec, REval};
use ybelab_core::cmat::{CMat, SiteSpace};
use ybelab_core::verify::{
    condition_outcomes, hermiticity_residual, run_checks, sutherland_residual, ybe_residual, CheckName, ConditionKind,
    Status, SuiteConfig,
};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn noise(rng: &mut ChaCha8Rng, d: usize, eps: f64) -> CMat {
    CMat::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * eps)
}

#[test]
fn perturbed_r_matrices_fail_ybe() {
    let p = default_presets();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in ["6vA-xxz", "6vB", "15v-c1-m1", "so4", "su22-m2"] {
        let m = find_model(&p, id).unwrap();
        let d = m.local_dim * m.local_dim;
        let bump = noise(&mut rng, d, 1e-2);
        let r = m.r_fn().unwrap();
        let broken = m.with_r_replaced(Some(Arc::new(move |u, v| Ok(&r(u, v)? + &bump))));
        let (u, v, w) = (c(0.1), c(0.35), c(0.52));
        let res = ybe_residual(&broken, u, v, w).unwrap();
        assert!(res >= 1e-4, "{id}: {res:e}");
    }
}

#[test]
fn perturbed_six_vertex_weight_fails_ybe() {
    let m = find_model(&default_presets(), "6vA-xxz").unwrap();
    let r = m.r_fn().unwrap();
    let broken = m.with_r_replaced(Some(Arc::new(move |u, v| {
        let mut x = r(u, v)?;
        x[(1, 1)] += 0.05;
        Ok(x)
    })));
    assert!(ybe_residual(&broken, c(0.1), c(0.3), c(0.5)).unwrap() >= 1e-3);
}

#[test]
fn wrong_density_fails_sutherland_and_recovery() {
    let m = find_model(&default_presets(), "6vB").unwrap();
    let h = m.h_fn();
    let wrong = m.with_h_replaced(Arc::new(move |t| {
        let mut x = h(t)?;
        x[(1, 2)] = -x[(1, 2)];
        Ok(x)
    }));
    let (s1, s2) = sutherland_residual(&wrong, c(0.2), c(0.45)).unwrap();
    assert!(s1.max(s2) >= 1e-3, "{s1:e} {s2:e}");
    let report = run_checks(&wrong, &SuiteConfig::with_seed(4), &[CheckName::Hamiltonian, CheckName::Sutherland]);
    assert!(report.checks.iter().all(|r| r.status == Status::Fail));
}

#[test]
fn non_hermitian_control_rows_are_flagged() {
    for id in ["su22-m1", "su22-m2", "su22-m4", "su22-m5", "su22-m6-neg"] {
        for kind in [ConditionKind::Hermiticity, ConditionKind::Normality] {
            for row in condition_outcomes(id, kind, 9).unwrap() {
                if row.satisfied {
                    assert!(row.residual <= 1e-10, "{id} {} {:e}", row.row, row.residual);
                } else {
                    assert!(row.residual >= 1e-4, "{id} {} {:e}", row.row, row.residual);
                }
            }
        }
    }
    let m1 = find_model(&default_presets(), "su22-m1").unwrap();
    assert!(hermiticity_residual(&m1.eval_h(c(0.3)).unwrap()) > 1e-3);
}

fn ansatz_model(h3_shift: f64) -> ModelSpec {
    let (c3, c4) = (c(2.0), c(0.5));
    let h: HEval = Arc::new(move |t: C64| {
        let (a, b) = (c(1.0), t + 1.0);
        Ok(xxz_ansatz(a, b, c3 * (a + b) / 2.0 + t * h3_shift, c4 * (a + b) / 2.0))
    });
    ModelSpec::new("xxz-ansatz", 2, Form::NonDifference, h)
}

#[test]
fn perturbed_xxz_ansatz_is_not_integrable() {
    let t = c(0.3);
    let good = integrability_residual(&ansatz_model(0.0), t).unwrap().residual;
    let bad = integrability_residual(&ansatz_model(0.3), t).unwrap().residual;
    assert!(good < 1e-6, "{good:e}");
    assert!(bad >= 1e-3, "{bad:e}");
}

#[test]
fn six_vertex_b_is_integrable_for_arbitrary_functions() {
    let fs = [
        ScalarFn::linear(0.3, -0.7),
        ScalarFn::exp(1.1, 0.4),
        ScalarFn::quadratic(0.2, 0.5, -0.3),
        ScalarFn::cos(0.8, 1.7),
        ScalarFn::constant(-0.6),
    ];
    let (h, dh) = six_vertex_b_general(fs);
    let with_dh = ModelSpec::new("6vB-general", 2, Form::NonDifference, h.clone()).with_dh(dh);
    let fd_only = ModelSpec::new("6vB-general", 2, Form::NonDifference, h);
    let t = c(0.3);
    let a = build_charges(&with_dh, t).unwrap();
    let b = build_charges(&fd_only, t).unwrap();
    assert!((&a.q3 - &b.q3).max_norm() < 1e-6);
    assert!(normalized_commutator(&a.q2, &a.q3) < 1e-10);
}

#[test]
fn charges_commute_with_the_cyclic_shift() {
    let p = default_presets();
    for id in ["6vB", "15v-c1-m3", "su22-m2"] {
        let m = find_model(&p, id).unwrap();
        let q = build_charges(&m, c(0.3)).unwrap();
        let shift = SiteSpace::new(m.local_dim, q.len).unwrap().cyclic_shift();
        for op in [&q.q2, &q.q3] {
            let res = (&shift.matmul(op) - &op.matmul(&shift)).max_norm() / op.max_norm();
            assert!(res < 1e-10, "{id}: {res:e}");
        }
    }
}

/// R acting on (aux, site k) of the (L+1)-fold product, built entrywise.
fn embed_aux(r: &CMat, n: usize, len: usize, k: usize) -> CMat {
    let d = n.pow(len as u32 + 1);
    let digits = |x: usize| -> Vec<usize> { (0..=len).map(|s| (x / n.pow((len - s) as u32)) % n).collect() };
    CMat::from_fn(d, d, |row, col| {
        let (a, b) = (digits(row), digits(col));
        if (0..=len).any(|s| s != 0 && s != k && a[s] != b[s]) {
            return C64::new(0.0, 0.0);
        }
        r[(a[0] * n + a[k], b[0] * n + b[k])]
    })
}

#[test]
fn transfer_matrix_matches_explicit_monodromy() {
    let p = default_presets();
    for (id, len) in [("6vB", 3), ("15v-c1-m2", 2), ("xxz-nondiff", 4)] {
        let m = find_model(&p, id).unwrap();
        let (u, th) = (C64::new(0.41, 0.03), c(0.22));
        let r = m.eval_r(u, th).unwrap();
        let n = m.local_dim;
        let mut mono = CMat::identity(n.pow(len as u32 + 1));
        for k in 1..=len {
            mono = embed_aux(&r, n, len, k).matmul(&mono);
        }
        let oracle = mono.partial_trace_first(n).unwrap();
        let t = transfer_matrix(&m, u, th, len).unwrap();
        assert!((&t - &oracle).max_norm() < 1e-12 * oracle.max_norm(), "{id}");
    }
}

#[test]
fn perturbed_r_breaks_transfer_commutation() {
    let m = find_model(&default_presets(), "xxz-nondiff").unwrap();
    let r: REval = m.r_fn().unwrap();
    let broken = m.with_r_replaced(Some(Arc::new(move |u, v| {
        let mut x = r(u, v)?;
        x[(0, 3)] += 0.05 * u;
        Ok(x)
    })));
    let res = ybelab_core::boost::transfer_commutation(&broken, c(0.1), c(0.5), c(0.3), 3).unwrap();
    assert!(res >= 1e-4, "{res:e}");
}
