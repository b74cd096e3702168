//! Two-dimensional local space: six- and eight-vertex type models.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::{
    c, cos_omega, domain_error, eight_vertex, general_two_site, sinc_omega, Form, HEval, ModelSpec, Presets,
    REval, ScalarFn,
};
use crate::cmat::{CMat, ZERO};
use crate::elliptic::sncndn;

pub fn models(p: &Presets) -> Vec<ModelSpec> {
    vec![xxz(p), xxz_nondiff(p), six_vertex_b(p), eight_vertex_a(p), eight_vertex_b(p), off_diagonal(p)]
}

/// XXZ density with anisotropy c: diag(0,1,1,0) plus c on the hopping entries.
pub fn xxz_h(cc: C64) -> CMat {
    eight_vertex([ZERO, c(1.0), c(1.0), ZERO, cc, cc, ZERO, ZERO])
}

/// Difference-form XXZ R-matrix, x = u − v.
pub fn xxz_r(cc: C64, x: C64) -> CMat {
    let w2 = cc * cc - 1.0;
    let s = sinc_omega(w2, x);
    let a = cos_omega(w2, x) - s;
    eight_vertex([a, cc * s, cc * s, a, c(1.0), c(1.0), ZERO, ZERO]).scale(x.exp())
}

fn xxz(p: &Presets) -> ModelSpec {
    let cc = p.constant("xxz.c");
    ModelSpec::new("6vA-xxz", 2, Form::Difference, Arc::new(move |_| Ok(xxz_h(cc))))
        .with_dh(Arc::new(|_| Ok(CMat::zeros(4, 4))))
        .with_r(Arc::new(move |u, v| Ok(xxz_r(cc, u - v))))
        .with_params(&[("c", cc)])
        .with_preset("xxz")
}

/// XXZ-type ansatz diag(0,h1,h2,0) with hopping entries h3 at (1,2) and h4 at (2,1).
pub fn xxz_ansatz(h1: C64, h2: C64, h3: C64, h4: C64) -> CMat {
    eight_vertex([ZERO, h1, h2, ZERO, h4, h3, ZERO, ZERO])
}

/// Non-difference XXZ solution: h3 = c3(h1+h2)/2, h4 = c4(h1+h2)/2.
pub fn xxz_nondiff_h(c3: C64, c4: C64, h1: ScalarFn, h2: ScalarFn) -> (HEval, HEval) {
    let h: HEval = Arc::new(move |t| {
        let (a, b) = (h1.value(t), h2.value(t));
        Ok(xxz_ansatz(a, b, c3 * (a + b) / 2.0, c4 * (a + b) / 2.0))
    });
    let dh: HEval = Arc::new(move |t| {
        let (a, b) = (h1.deriv(t), h2.deriv(t));
        Ok(xxz_ansatz(a, b, c3 * (a + b) / 2.0, c4 * (a + b) / 2.0))
    });
    (h, dh)
}

pub fn xxz_nondiff_r(c3: C64, c4: C64, h1: ScalarFn, h2: ScalarFn) -> REval {
    Arc::new(move |u, v| {
        let d1 = h1.anti(u) - h1.anti(v);
        let d2 = h2.anti(u) - h2.anti(v);
        let (hp, hm) = ((d1 + d2) / 2.0, (d1 - d2) / 2.0);
        let w2 = c3 * c4 - 1.0;
        let s = sinc_omega(w2, hp);
        let a = cos_omega(w2, hp) - s;
        Ok(eight_vertex([a, c4 * s, c3 * s, a, hm.exp(), (-hm).exp(), ZERO, ZERO]).scale(hp.exp()))
    })
}

fn xxz_nondiff(p: &Presets) -> ModelSpec {
    let (c3, c4) = (p.constant("xxznd.c3"), p.constant("xxznd.c4"));
    let (h1, h2) = (p.func("xxznd.h1"), p.func("xxznd.h2"));
    let (h, dh) = xxz_nondiff_h(c3, c4, h1, h2);
    ModelSpec::new("xxz-nondiff", 2, Form::NonDifference, h)
        .with_dh(dh)
        .with_r(xxz_nondiff_r(c3, c4, h1, h2))
        .with_params(&[("c3", c3), ("c4", c4)])
        .with_preset("xxz-nondiff-default")
}

/// Six-vertex B density for arbitrary h1..h5 (integrable for any choice).
pub fn six_vertex_b_general(h: [ScalarFn; 5]) -> (HEval, HEval) {
    let val: HEval = Arc::new(move |t| {
        let v: Vec<C64> = h.iter().map(|f| f.value(t)).collect();
        Ok(general_two_site([v[0], v[1], v[2], v[3], v[4], ZERO, ZERO, ZERO]))
    });
    let der: HEval = Arc::new(move |t| {
        let v: Vec<C64> = h.iter().map(|f| f.deriv(t)).collect();
        Ok(general_two_site([v[0], v[1], v[2], v[3], v[4], ZERO, ZERO, ZERO]))
    });
    (val, der)
}

fn six_vertex_b(p: &Presets) -> ModelSpec {
    let (h4, h5) = (p.func("6vb.h4"), p.func("6vb.h5"));
    let h: HEval = Arc::new(move |t| {
        let (a, b, db) = (h4.value(t), h5.value(t), h5.deriv(t));
        Ok(eight_vertex([a * b, ZERO, ZERO, -a * b, a, a * b * b - db, ZERO, ZERO]))
    });
    let dh: HEval = Arc::new(move |t| {
        let (a, b, da, db, ddb) = (h4.value(t), h5.value(t), h4.deriv(t), h5.deriv(t), h5.deriv2(t));
        let ab = da * b + a * db;
        Ok(eight_vertex([ab, ZERO, ZERO, -ab, da, da * b * b + a * b * db * 2.0 - ddb, ZERO, ZERO]))
    });
    let r: REval = Arc::new(move |x, y| {
        let a = h4.anti(x) - h4.anti(y);
        let (hx, hy) = (h5.value(x), h5.value(y));
        Ok(eight_vertex([c(1.0) + hx * a, a, hx * hy * a - hx + hy, c(1.0) - hy * a, c(1.0), c(1.0), ZERO, ZERO]))
    });
    ModelSpec::new("6vB", 2, Form::NonDifference, h).with_dh(dh).with_r(r).with_preset("6vB-default")
}

fn eight_vertex_a(p: &Presets) -> ModelSpec {
    let (h1, h2, h6) = (p.func("8va.h1"), p.func("8va.h2"), p.func("8va.h6"));
    let (c3, c7, c8) = (p.constant("8va.c3"), p.constant("8va.c7"), p.constant("8va.c8"));
    let h: HEval = Arc::new(move |t| {
        let (e, g) = (h6.value(t), (h2.anti(t) * 4.0).exp());
        Ok(general_two_site([h1.value(t), h2.value(t), c3 * e, c3 * e, ZERO, e, c7 * e * g, c8 * e / g]))
    });
    let dh: HEval = Arc::new(move |t| {
        let (e, de, g, k) = (h6.value(t), h6.deriv(t), (h2.anti(t) * 4.0).exp(), h2.value(t) * 4.0);
        Ok(general_two_site([
            h1.deriv(t),
            h2.deriv(t),
            c3 * de,
            c3 * de,
            ZERO,
            de,
            c7 * (de + k * e) * g,
            c8 * (de - k * e) / g,
        ]))
    });
    ModelSpec::new("8vA", 2, Form::NonDifference, h)
        .with_dh(dh)
        .with_params(&[("c3", c3), ("c7", c7), ("c8", c8)])
        .with_preset("8vA-default")
}

/// Eight-vertex B with η(θ) and elliptic modulus k (parameter m = k²).
pub fn eight_vertex_b_pair(id: &'static str, eta: ScalarFn, k: C64) -> (HEval, HEval, REval) {
    let h: HEval = Arc::new(move |t| {
        let e = eta.value(t);
        let s = e.sin();
        if s.norm() < 1e-12 {
            return Err(domain_error(id, t, "sin η(θ) = 0"));
        }
        let (ct, de) = (e.cos() / s, eta.deriv(t));
        Ok(eight_vertex([-ct, ZERO, ZERO, ct, (c(2.0) + de) / (s * 2.0), (c(2.0) - de) / (s * 2.0), k, k]))
    });
    let dh: HEval = Arc::new(move |t| {
        let e = eta.value(t);
        let (s, co) = (e.sin(), e.cos());
        if s.norm() < 1e-12 {
            return Err(domain_error(id, t, "sin η(θ) = 0"));
        }
        let (de, dde) = (eta.deriv(t), eta.deriv2(t));
        let dct = -de / (s * s);
        let d_lower = dde / (s * 2.0) - (c(2.0) + de) * co * de / (s * s * 2.0);
        let d_upper = -dde / (s * 2.0) - (c(2.0) - de) * co * de / (s * s * 2.0);
        Ok(eight_vertex([-dct, ZERO, ZERO, dct, d_lower, d_upper, ZERO, ZERO]))
    });
    let r: REval = Arc::new(move |u, v| {
        let (eu, ev) = (eta.value(u), eta.value(v));
        let (su, sv) = (eu.sin(), ev.sin());
        if su.norm() < 1e-12 || sv.norm() < 1e-12 {
            return Err(domain_error(id, if su.norm() < 1e-12 { u } else { v }, "sin η = 0"));
        }
        let pre = (su.sqrt() * sv.sqrt()).inv();
        let j = sncndn(u - v, k * k)?;
        let cd = j.cn / j.dn;
        let (ep, em) = ((eu + ev) / 2.0, (eu - ev) / 2.0);
        let r1 = pre * (ep.sin() * cd - ep.cos() * j.sn);
        let r2 = pre * (em.cos() * j.sn + em.sin() * cd);
        let r3 = pre * (em.cos() * j.sn - em.sin() * cd);
        let r4 = pre * (ep.sin() * cd + ep.cos() * j.sn);
        let r8 = k * j.sn * cd;
        Ok(eight_vertex([r1, r2, r3, r4, c(1.0), c(1.0), r8, r8]))
    });
    (h, dh, r)
}

fn eight_vertex_b(p: &Presets) -> ModelSpec {
    let (eta, k) = (p.func("8vb.eta"), p.constant("8vb.k"));
    let (h, dh, r) = eight_vertex_b_pair("8vB", eta, k);
    let form = if eta.is_constant() { Form::Difference } else { Form::NonDifference };
    ModelSpec::new("8vB", 2, form, h).with_dh(dh).with_r(r).with_params(&[("k", k)]).with_preset("8vB-default")
}

fn off_diagonal(p: &Presets) -> ModelSpec {
    let (h3, h7) = (p.func("offdiag.h3"), p.func("offdiag.h7"));
    let build = |a: C64, b: C64| eight_vertex([ZERO, ZERO, ZERO, ZERO, -a, a, b, b]);
    let h: HEval = Arc::new(move |t| Ok(build(h3.value(t), h7.value(t))));
    let dh: HEval = Arc::new(move |t| Ok(build(h3.deriv(t), h7.deriv(t))));
    let r: REval = Arc::new(move |u, v| {
        let a = h3.anti(u) - h3.anti(v);
        let b = h7.anti(u) - h7.anti(v);
        Ok(eight_vertex([a.cosh(), -a.sinh(), a.sinh(), a.cosh(), b.cos(), b.cos(), b.sin(), b.sin()]))
    });
    ModelSpec::new("offdiag", 2, Form::QuasiDifference, h).with_dh(dh).with_r(r).with_preset("offdiag-default")
}
