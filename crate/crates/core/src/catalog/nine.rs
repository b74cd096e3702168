//! Three-dimensional local space: fifteen-vertex models commuting with the
//! Cartan subalgebra of su(3). Matrix units are 1-based, E_ij on C^9.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::{c, e9, perm, Domain, Form, HEval, ModelSpec, Presets, REval, ScalarFn};
use crate::cmat::CMat;

pub fn models(p: &Presets) -> Vec<ModelSpec> {
    let mut out: Vec<ModelSpec> = [(1, 1.0, 1.0), (2, 1.0, 0.0), (3, 0.0, 1.0), (4, 0.0, 0.0)]
        .into_iter()
        .map(|(k, a, b)| class_one(p, k, c(a), c(b)))
        .collect();
    out.push(class_two_m5(p));
    out.push(class_two_m6(p, 1.0));
    out.push(class_two_m6(p, -1.0));
    out
}

fn class_one(p: &Presets, k: usize, big_a: C64, big_b: C64) -> ModelSpec {
    let (a, b, cc) = (p.constant("15v-c1.a"), p.constant("15v-c1.b"), p.constant("15v-c1.c"));
    let h: HEval = Arc::new(move |t| {
        let mut m = &e9(2, 4).scale(b * (-t).exp()) + &e9(7, 3).scale(a * t.exp());
        m += &e9(8, 6).scale(cc);
        m += &e9(5, 5).scale(big_a);
        m += &e9(6, 6);
        m += &e9(9, 9).scale(big_b);
        Ok(m)
    });
    let dh: HEval = Arc::new(move |t| Ok(&e9(2, 4).scale(-b * (-t).exp()) + &e9(7, 3).scale(a * t.exp())));
    let r: REval = Arc::new(move |u, v| {
        let (s, d) = ((u + v) / 2.0, (u - v) / 2.0);
        let ed = d.exp();
        let mut dm = &e9(3, 3).scale(a * s.exp()) + &e9(4, 4).scale(b * (-s).exp());
        dm += &e9(5, 5).scale(big_a * ed);
        dm += &e9(6, 6).scale(cc * ed);
        dm += &e9(9, 9).scale(big_b * ed);
        let pm = &perm(3) - &e9(8, 6).scale(c(1.0) - (u - v).exp());
        Ok(&dm.scale(d.sinh() * 2.0) + &pm)
    });
    ModelSpec::new(&format!("15v-c1-m{k}"), 3, Form::NonDifference, h)
        .with_dh(dh)
        .with_r(r)
        .with_params(&[("a", a), ("b", b), ("c", cc), ("A", big_a), ("B", big_b)])
        .with_preset("15v-c1-default")
}

fn class_two_m5(p: &Presets) -> ModelSpec {
    let (g1, g2) = (p.func("15v-c2.g1"), p.func("15v-c2.g2"));
    let h: HEval = Arc::new(move |t| {
        let (a, b) = (g1.value(t), g2.value(t));
        let e = ((g1.anti(t) - g2.anti(t)) * 2.0).exp();
        let mut m = e9(4, 2).scale((a - b) * e * (-2.0 / 3.0));
        m += &e9(5, 5).scale((a - b) * 2.0);
        m += &e9(9, 9).scale((a * 2.0 + b) * 2.0);
        Ok(m)
    });
    let dh: HEval = Arc::new(move |t| {
        let (a, b, da, db) = (g1.value(t), g2.value(t), g1.deriv(t), g2.deriv(t));
        let e = ((g1.anti(t) - g2.anti(t)) * 2.0).exp();
        let mut m = e9(4, 2).scale((da - db + (a - b) * (a - b) * 2.0) * e * (-2.0 / 3.0));
        m += &e9(5, 5).scale((da - db) * 2.0);
        m += &e9(9, 9).scale((da * 2.0 + db) * 2.0);
        Ok(m)
    });
    let r: REval = Arc::new(move |u, v| {
        let (g1p, g1m) = (g1.anti(u) + g1.anti(v), g1.anti(u) - g1.anti(v));
        let (g2p, g2m) = (g2.anti(u) + g2.anti(v), g2.anti(u) - g2.anti(v));
        let (hp, hm) = (g1p - g2p, g1m - g2m);
        let f = g1m * 2.0 + g2m;
        let d = &e9(2, 2).scale(hp.exp() * (-1.0 / 3.0)) + &e9(5, 5).scale(hm.exp());
        let mut m = d.scale(hm.sinh() * 2.0);
        m += &e9(9, 9).scale(f.exp() * f.sinh() * 2.0);
        m += &perm(3);
        Ok(m)
    });
    ModelSpec::new("15v-c2-m5", 3, Form::NonDifference, h).with_dh(dh).with_r(r).with_preset("15v-c2-default")
}

/// Branch data of the class-2 model-6 functions at θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M6Functions {
    pub big_g: C64,
    pub j: C64,
    pub i: C64,
    pub di: C64,
    /// True when |e^{2G} j| > 1 and I uses the atanh(1/y) + iπ/2 representation.
    pub outer_branch: bool,
}

/// j = √(e^{−4G} + b), I = −½ artanh(e^{2G} j) and dI/dθ = g e^{−2G}/j.
/// `outer` forces the branch; `None` picks it from |y|.
pub fn m6_functions(g: &ScalarFn, b: C64, t: C64, outer: Option<bool>) -> M6Functions {
    let big_g = g.anti(t);
    let j = ((-big_g * 4.0).exp() + b).sqrt();
    let y = (big_g * 2.0).exp() * j;
    let outer_branch = outer.unwrap_or(y.norm() > 1.0);
    let i = if outer_branch {
        ((c(1.0) / y).atanh() + C64::new(0.0, FRAC_PI_2)) * (-0.5)
    } else {
        y.atanh() * (-0.5)
    };
    let di = g.value(t) * (-big_g * 2.0).exp() / j;
    M6Functions { big_g, j, i, di, outer_branch }
}

fn class_two_m6(p: &Presets, s: f64) -> ModelSpec {
    let (g, b, a) = (p.func("15v-c2.g"), p.constant("15v-c2.b"), p.constant("15v-c2.a"));
    let h: HEval = Arc::new(move |t| {
        let fx = m6_functions(&g, b, t, None);
        let q = g.value(t) + fx.di * s;
        let e = ((fx.big_g + fx.i * s) * 2.0).exp();
        let mut m = &e9(4, 2).scale(q * e * (-2.0 / 3.0)) + &e9(7, 3).scale(a * q * e * (-2.0 / 3.0));
        m += &e9(5, 5).scale(q * 2.0);
        m += &e9(9, 9).scale((g.value(t) - fx.di * s) * 2.0);
        Ok(m)
    });
    let r: REval = Arc::new(move |u, v| {
        // One branch per evaluation, taken from the first argument.
        let fu = m6_functions(&g, b, u, None);
        let fv = m6_functions(&g, b, v, Some(fu.outer_branch));
        let (gp, gm) = (fu.big_g + fv.big_g, fu.big_g - fv.big_g);
        let (ip, im) = (fu.i + fv.i, fu.i - fv.i);
        let f = (gm + im * s).sinh() * (-2.0 / 3.0);
        let d = &(&e9(2, 2) + &e9(3, 3).scale(a)).scale((gp + ip * s).exp()) - &e9(5, 5).scale((gm + im * s).exp() * 3.0);
        let x = gm - im * s;
        let mut m: CMat = d.scale(f);
        m += &e9(9, 9).scale(x.exp() * x.sinh() * 2.0);
        m += &perm(3);
        Ok(m)
    });
    let id = if s > 0.0 { "15v-c2-m6p" } else { "15v-c2-m6m" };
    ModelSpec::new(id, 3, Form::NonDifference, h)
        .with_r(r)
        .with_params(&[("a", a), ("b", b), ("sign", c(s))])
        .with_domain(Domain::real(0.05, 0.6))
        .with_preset("15v-c2-default")
}
