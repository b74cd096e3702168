use num_complex::Complex64 as C64;
use ybelab_core::catalog::nine::m6_functions;
use ybelab_core::catalog::presets::{parse_complex, ScalarFn};
use ybelab_core::catalog::{all_models, default_presets, find_model, Form};
use ybelab_core::sampling::{stream_seed, Sampler};
use ybelab_core::stencil;
use ybelab_core::verify::regularity;

fn points(model: &ybelab_core::catalog::ModelSpec, arity: usize, n: usize) -> Vec<Vec<C64>> {
    Sampler::new(model.domain, arity, stream_seed(3, &model.id)).take(n).into_iter().map(|s| s.0).collect()
}

#[test]
fn every_r_matrix_is_regular() {
    for m in all_models(&default_presets()).iter().filter(|m| m.has_r()) {
        for p in points(m, 1, 4) {
            let reg = regularity(m, p[0]).unwrap();
            assert!(reg.residual < 1e-9, "{} at {}: {:e}", m.id, p[0], reg.residual);
            assert!(reg.value.norm() > 1e-6, "{}: vanishing alpha", m.id);
        }
    }
}

#[test]
fn difference_form_models_depend_on_u_minus_v() {
    let mut presets = default_presets();
    presets.set_func("8vb.eta", ScalarFn::constant(1.2)).unwrap();
    for id in ["6vA-xxz", "8vB", "ghub"] {
        let m = find_model(&presets, id).unwrap();
        assert_eq!(m.form, Form::Difference, "{id}");
        let r = m.r_fn().unwrap();
        for p in points(&m, 2, 4) {
            let (u, v) = (p[0], p[1]);
            let a = r(u, v).unwrap();
            let b = r(u - v + 0.3, C64::new(0.3, 0.0)).unwrap();
            assert!((&a - &b).max_norm() < 1e-10 * a.max_norm().max(1.0), "{id}");
        }
    }
}

#[test]
fn analytic_density_derivatives_match_finite_differences() {
    for m in all_models(&default_presets()) {
        for p in points(&m, 1, 3) {
            let Some(dh) = m.eval_dh(p[0]) else { continue };
            let dh = dh.unwrap();
            let fd = stencil::central(|t| m.eval_h(t), p[0]).unwrap();
            let err = (&dh - &fd).max_norm() / dh.max_norm().max(1.0);
            assert!(err < 1e-7, "{} at {}: {err:e}", m.id, p[0]);
        }
    }
}

#[test]
fn preset_functions_have_consistent_derivatives_and_antiderivatives() {
    let p = default_presets();
    let t = C64::new(0.37, 0.05);
    for (key, f) in p.functions() {
        let d = stencil::central(|x| Ok(ybelab_core::cmat::CMat::diag(&[f.value(x)])), t).unwrap()[(0, 0)];
        assert!((d - f.deriv(t)).norm() < 1e-7, "{key}: deriv");
        let d2 = stencil::central(|x| Ok(ybelab_core::cmat::CMat::diag(&[f.deriv(x)])), t).unwrap()[(0, 0)];
        assert!((d2 - f.deriv2(t)).norm() < 1e-7, "{key}: deriv2");
        let a = stencil::central(|x| Ok(ybelab_core::cmat::CMat::diag(&[f.anti(x)])), t).unwrap()[(0, 0)];
        assert!((a - f.value(t)).norm() < 1e-7, "{key}: anti");
    }
}

#[test]
fn fifteen_vertex_m6_functions_satisfy_their_defining_relations() {
    let p = default_presets();
    let (g, b) = (p.func("15v-c2.g"), p.constant("15v-c2.b"));
    for t in [0.1, 0.3, 0.55] {
        let t = C64::new(t, 0.0);
        let fx = m6_functions(&g, b, t, None);
        assert!((fx.j * fx.j - ((-fx.big_g * 4.0).exp() + b)).norm() < 1e-12);
        let y = (fx.big_g * 2.0).exp() * fx.j;
        assert!(((-fx.i * 2.0).tanh() - y).norm() < 1e-12, "tanh(-2I) = e^(2G) j");
        let di = stencil::central(|x| Ok(ybelab_core::cmat::CMat::diag(&[m6_functions(&g, b, x, Some(fx.outer_branch)).i])), t)
            .unwrap()[(0, 0)];
        assert!((di - fx.di).norm() < 1e-8);
    }
}

#[test]
fn complex_literals_parse() {
    assert_eq!(parse_complex("1.5-2i").unwrap(), C64::new(1.5, -2.0));
    assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
    assert_eq!(parse_complex("1e-3+2.5i").unwrap(), C64::new(1e-3, 2.5));
    assert!(parse_complex("1+").is_err());
}

#[test]
fn su22_m5_default_reparameterization_is_a_reflection() {
    let p = default_presets();
    let (f, g, h) = (p.func("su22-m5.f"), p.func("su22-m5.g"), p.func("su22-m5.h"));
    for t in [0.0, 0.2, 0.45, -0.7] {
        let x = ybelab_core::catalog::presets::su22_m5_reparam_integrand(&f, &g, &h, C64::new(t, 0.1));
        assert!((x + 1.0).norm() < 1e-14, "dx/du = {x}");
    }
}

#[test]
fn su22_m8_r_entries_obey_their_relations() {
    use ybelab_core::catalog::sixteen::su22_coefficients;
    let p = default_presets();
    for (id, s) in [("su22-m8", 1.0), ("su22-m8-neg", -1.0)] {
        let m = find_model(&p, id).unwrap();
        for pt in points(&m, 2, 5) {
            let r = su22_coefficients(&m.eval_r(pt[0], pt[1]).unwrap());
            assert!((r[4] - 1.0).norm() < 1e-14 && (r[6] - 1.0).norm() < 1e-14, "{id}: r5, r7");
            assert!((r[1] - r[8]).norm() < 1e-14, "{id}: r2 = r9");
            assert!((r[7] - ((r[3] + r[5]) * s + r[0])).norm() < 1e-12, "{id}: r8");
        }
    }
}
