//! Four-dimensional local space: so(4), su(2)⊕su(2)-invariant models and
//! the generalized Hubbard model.
//!
//! Local basis for the su(2)⊕su(2) models: 0 = φ1, 1 = φ2, 2 = ψ1, 3 = ψ2.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::dual::Dual;
use super::{c, domain_error, perm, Domain, Form, HEval, ModelSpec, Presets, REval, ScalarFn};
use crate::cmat::{CMat, ONE, ZERO};
use crate::elliptic::{jacobi, JacobiKind};
use crate::error::Result;

const PHI: [usize; 2] = [0, 1];
const PSI: [usize; 2] = [2, 3];

fn eps(a: usize, b: usize) -> f64 {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => 1.0,
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Greater => -1.0,
    }
}

fn idx(a: usize, b: usize) -> usize {
    4 * a + b
}

/// Operator with the su(2)⊕su(2)-invariant action
///   |φa φb⟩ → x1 |φa φb⟩ + x2 |φb φa⟩ + x3 ε_ab ε_αβ |ψα ψβ⟩
///   |φa ψβ⟩ → x4 |φa ψβ⟩ + x5 |ψβ φa⟩
///   |ψα φb⟩ → x6 |ψα φb⟩ + x7 |φb ψα⟩
///   |ψα ψβ⟩ → x8 |ψα ψβ⟩ + x9 |ψβ ψα⟩ + x10 ε_ab ε_αβ |φa φb⟩
/// used for both densities (h_i) and R-matrices (r_i).
pub fn su22_matrix(x: [C64; 10]) -> CMat {
    let mut m = CMat::zeros(16, 16);
    for a in 0..2 {
        for b in 0..2 {
            let col = idx(PHI[a], PHI[b]);
            m[(idx(PHI[a], PHI[b]), col)] += x[0];
            m[(idx(PHI[b], PHI[a]), col)] += x[1];
            for al in 0..2 {
                for be in 0..2 {
                    m[(idx(PSI[al], PSI[be]), col)] += x[2] * eps(a, b) * eps(al, be);
                }
            }
        }
    }
    for a in 0..2 {
        for be in 0..2 {
            let col = idx(PHI[a], PSI[be]);
            m[(col, col)] += x[3];
            m[(idx(PSI[be], PHI[a]), col)] += x[4];
            let col = idx(PSI[be], PHI[a]);
            m[(col, col)] += x[5];
            m[(idx(PHI[a], PSI[be]), col)] += x[6];
        }
    }
    for al in 0..2 {
        for be in 0..2 {
            let col = idx(PSI[al], PSI[be]);
            m[(idx(PSI[al], PSI[be]), col)] += x[7];
            m[(idx(PSI[be], PSI[al]), col)] += x[8];
            for a in 0..2 {
                for b in 0..2 {
                    m[(idx(PHI[a], PHI[b]), col)] += x[9] * eps(a, b) * eps(al, be);
                }
            }
        }
    }
    m
}

/// Reads the ten coefficients back from an su(2)⊕su(2)-invariant matrix.
pub fn su22_coefficients(m: &CMat) -> [C64; 10] {
    [m[(1, 1)], m[(4, 1)], m[(11, 1)], m[(2, 2)], m[(8, 2)], m[(8, 8)], m[(2, 8)], m[(11, 11)], m[(14, 11)], m[(1, 11)]]
}

fn values(x: [Dual; 10]) -> CMat {
    su22_matrix(x.map(|d| d.v))
}

fn derivs(x: [Dual; 10]) -> CMat {
    su22_matrix(x.map(|d| d.d))
}

/// Inputs of the tabulated su(2)⊕su(2) densities (models 1-6) at one θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su22Point {
    pub theta: Dual,
    pub f: Dual,
    pub g: Dual,
    pub h: Dual,
    /// F with F' = f.
    pub big_f: Dual,
    pub c: C64,
    pub c1: C64,
    pub c2: C64,
    pub sign: f64,
}

impl Su22Point {
    /// Plain values without derivative information.
    #[allow(clippy::too_many_arguments)]
    pub fn constant(theta: C64, f: C64, g: C64, h: C64, big_f: C64, cc: C64, c1: C64, c2: C64, sign: f64) -> Self {
        Su22Point {
            theta: Dual::cst(theta),
            f: Dual::cst(f),
            g: Dual::cst(g),
            h: Dual::cst(h),
            big_f: Dual::cst(big_f),
            c: cc,
            c1,
            c2,
            sign,
        }
    }
}

/// √((x+1)/(x−1)) with the principal root.
fn sq(x: Dual) -> Dual {
    ((x + 1.0) / (x - 1.0)).sqrt()
}

/// Coefficients h1..h10 of the tabulated density of model `model` (1..=6).
pub fn su22_table_entries(model: usize, p: &Su22Point) -> [Dual; 10] {
    let z = Dual::re(0.0);
    let one = Dual::re(1.0);
    let (f, g, h, s) = (p.f, p.g, p.h, p.sign);
    let e2f = (p.big_f * 2.0).exp();
    match model {
        1 => {
            let t = p.theta;
            let t2 = t * t;
            [
                one / ((t2 - 1.0) * 2.0),
                Dual::re(0.5),
                z,
                t / (one - t2),
                sq(t) * (0.5 * s),
                t / (t2 - 1.0),
                Dual::re(0.5 * s) / sq(t),
                one / ((one - t2) * 2.0),
                Dual::re(-0.5),
                Dual::cst(p.c),
            ]
        }
        2 => [f, h, z, g, h * p.c / e2f, -g, h * e2f / p.c, -f, h * s, z],
        3 => [f, h * s, z, g, h * p.c / e2f, -g, h * e2f / p.c, h - f, z, z],
        4 => {
            let (c1, c2) = (p.c1, p.c2);
            let c12 = c1 * (c1 + 2.0);
            [f * (c1 + 2.0), z, z, (f - g) * c1, g * c12 / (e2f * c2), (f - g) * (c1 + 2.0), e2f * g * c2, f * c1, z, z]
        }
        5 => [f, z, z, z, g, z, h, -f, z, z],
        6 => [f - h, z, z, f + h, h * 2.0 / (e2f * p.c), h - f, h * e2f * p.c * 2.0, h - f, h * (2.0 * s), z],
        _ => panic!("tabulated su(2)+su(2) densities are models 1-6, got {model}"),
    }
}

pub fn su22_table_density(model: usize, p: &Su22Point) -> CMat {
    values(su22_table_entries(model, p))
}

#[derive(Clone, Copy)]
struct Su22Fns {
    f: ScalarFn,
    g: ScalarFn,
    h: ScalarFn,
    c: C64,
    c1: C64,
    c2: C64,
}

impl Su22Fns {
    fn from(p: &Presets) -> Self {
        Su22Fns {
            f: p.func("su22.f"),
            g: p.func("su22.g"),
            h: p.func("su22.h"),
            c: p.constant("su22.c"),
            c1: p.constant("su22.c1"),
            c2: p.constant("su22.c2"),
        }
    }

    fn point(&self, t: C64, sign: f64) -> Su22Point {
        Su22Point {
            theta: Dual::var(t),
            f: Dual::of(&self.f, t),
            g: Dual::of(&self.g, t),
            h: Dual::of(&self.h, t),
            big_f: Dual::anti(&self.f, t),
            c: self.c,
            c1: self.c1,
            c2: self.c2,
            sign,
        }
    }
}

fn table_model(id: String, model: usize, fns: Su22Fns, sign: f64, r: REval) -> ModelSpec {
    let h: HEval = Arc::new(move |t| Ok(values(su22_table_entries(model, &fns.point(t, sign)))));
    let dh: HEval = Arc::new(move |t| Ok(derivs(su22_table_entries(model, &fns.point(t, sign)))));
    ModelSpec::new(&id, 4, Form::NonDifference, h)
        .with_dh(dh)
        .with_r(r)
        .with_params(&[("c", fns.c), ("c1", fns.c1), ("c2", fns.c2), ("sign", c(sign))])
        .with_preset("su22-default")
}

fn signed_id(base: &str, sign: f64) -> String {
    if sign > 0.0 {
        base.to_string()
    } else {
        format!("{base}-neg")
    }
}

pub fn models(p: &Presets) -> Vec<ModelSpec> {
    let fns = Su22Fns::from(p);
    let mut out = vec![so4(p)];
    for s in [1.0, -1.0] {
        out.push(model1(p, s));
        out.push(table_model(signed_id("su22-m2", s), 2, fns, s, model2_r(fns, s)));
        out.push(table_model(signed_id("su22-m3", s), 3, fns, s, model3_r(fns, s)));
        out.push(table_model(signed_id("su22-m6", s), 6, fns, s, model6_r(fns, s)));
        out.push(model8(p, s));
    }
    out.push(table_model("su22-m4".into(), 4, fns, 1.0, model4_r(fns)));
    out.push(model5(p));
    out.push(model7(p));
    out.push(ghub(p));
    out
}

struct Diffs {
    fm: C64,
    fp: C64,
    gm: C64,
    hm: C64,
}

fn diffs(fns: &Su22Fns, u: C64, v: C64) -> Diffs {
    Diffs {
        fm: fns.f.anti(u) - fns.f.anti(v),
        fp: fns.f.anti(u) + fns.f.anti(v),
        gm: fns.g.anti(u) - fns.g.anti(v),
        hm: fns.h.anti(u) - fns.h.anti(v),
    }
}

fn model2_r(fns: Su22Fns, s: f64) -> REval {
    Arc::new(move |u, v| {
        let Diffs { fm, fp, gm, hm } = diffs(&fns, u, v);
        let cc = fns.c;
        Ok(su22_matrix([
            hm * fm.exp(),
            fm.exp(),
            ZERO,
            cc * hm * (-fp).exp(),
            gm.exp(),
            hm * fp.exp() / cc,
            (-gm).exp(),
            hm * (-fm).exp() * s,
            (-fm).exp(),
            ZERO,
        ]))
    })
}

fn model3_r(fns: Su22Fns, s: f64) -> REval {
    Arc::new(move |u, v| {
        let Diffs { fm, fp, gm, hm } = diffs(&fns, u, v);
        let cc = fns.c;
        Ok(su22_matrix([
            hm * fm.exp() * s,
            fm.exp(),
            ZERO,
            cc * hm * (-fp).exp(),
            gm.exp(),
            hm * fp.exp() / cc,
            (-gm).exp(),
            ZERO,
            (hm + 1.0) * (-fm).exp(),
            ZERO,
        ]))
    })
}

fn model4_r(fns: Su22Fns) -> REval {
    Arc::new(move |u, v| {
        let Diffs { fm, fp, gm, .. } = diffs(&fns, u, v);
        let (c1, c2) = (fns.c1, fns.c2);
        let c12 = c1 * (c1 + 2.0);
        let r7 = ((c1 + 2.0) * (fm - gm)).exp();
        let e2g = (gm * 2.0).exp();
        let r2 = ((c1 + 2.0) * e2g - c1) * r7 / 2.0;
        let r4 = c12 * (e2g - 1.0) * r7 / (c2 * 2.0 * (fns.f.anti(u) * 2.0).exp());
        let r5 = (c1 * (fm - gm)).exp();
        let r6 = c2 * c2 * (fp * 2.0).exp() * r4 / c12;
        let r9 = (-fm * 2.0).exp() * r2;
        Ok(su22_matrix([ZERO, r2, ZERO, r4, r5, r6, r7, ZERO, r9, ZERO]))
    })
}

fn model6_r(fns: Su22Fns, s: f64) -> REval {
    Arc::new(move |u, v| {
        let Diffs { fm, fp, hm, .. } = diffs(&fns, u, v);
        let cc = fns.c;
        let ehm = hm.exp();
        Ok(su22_matrix([
            ZERO,
            (fm + hm).exp() * (c(1.0) - hm * 2.0),
            ZERO,
            hm * ehm * 2.0 / (cc * fp.exp()),
            (fm + hm).exp(),
            cc * hm * (fp + hm).exp() * 2.0,
            ehm / fm.exp(),
            hm * ehm / fm.exp() * (2.0 * s),
            ehm / fm.exp(),
            ZERO,
        ]))
    })
}

fn model1(p: &Presets, s: f64) -> ModelSpec {
    let cc = p.constant("su22-m1.c");
    let id = signed_id("su22-m1", s);
    let point = move |t: C64| Su22Point {
        theta: Dual::var(t),
        f: Dual::re(0.0),
        g: Dual::re(0.0),
        h: Dual::re(0.0),
        big_f: Dual::re(0.0),
        c: cc,
        c1: ZERO,
        c2: ZERO,
        sign: s,
    };
    let near_pole = |t: C64| (t - 1.0).norm() < 1e-6 || (t + 1.0).norm() < 1e-6;
    let hid = id.clone();
    let h: HEval = Arc::new(move |t| {
        if near_pole(t) {
            return Err(domain_error(&hid, t, "θ = ±1"));
        }
        Ok(values(su22_table_entries(1, &point(t))))
    });
    let did = id.clone();
    let dh: HEval = Arc::new(move |t| {
        if near_pole(t) {
            return Err(domain_error(&did, t, "θ = ±1"));
        }
        Ok(derivs(su22_table_entries(1, &point(t))))
    });
    let rid = id.clone();
    let sqc = |x: C64| ((x + 1.0) / (x - 1.0)).sqrt();
    let r: REval = Arc::new(move |u, v| {
        for z in [u, v] {
            if near_pole(z) {
                return Err(domain_error(&rid, z, "spectral parameter at ±1"));
            }
        }
        let one = c(1.0);
        let r5 = (one - v * v).sqrt() / (one - u * u).sqrt();
        let q = (one + v).sqrt() / (r5.sqrt() * (one + u).sqrt() * 2.0);
        let r1 = (u - v) * q;
        let ratio = sqc(u) / sqc(v);
        Ok(su22_matrix([
            r1,
            q * 2.0,
            ZERO,
            r1 * sqc(u) * s,
            r5,
            r1 / sqc(v) * s,
            one / r5,
            -r1 * ratio,
            q * ratio * 2.0,
            cc * (v - u),
        ]))
    });
    ModelSpec::new(&id, 4, Form::NonDifference, h)
        .with_dh(dh)
        .with_r(r)
        .with_params(&[("c", cc), ("sign", c(s))])
        .with_domain(Domain::real(0.05, 0.6))
        .with_preset("su22-m1")
}

/// Model 5 on the slice where its R-matrix exists: g = (f'h − fh')/h² + f²/h.
fn model5(p: &Presets) -> ModelSpec {
    let (f, h) = (p.func("su22-m5.f"), p.func("su22-m5.h"));
    let entries = move |t: C64| {
        let (fv, hv) = (Dual::of(&f, t), Dual::of(&h, t));
        let (fd, hd) = (Dual::deriv(&f, t), Dual::deriv(&h, t));
        let g = (fd * hv - fv * hd) / (hv * hv) + fv * fv / hv;
        let z = Dual::re(0.0);
        [fv, z, z, z, g, z, hv, -fv, z, z]
    };
    let hv: HEval = Arc::new(move |t| Ok(values(entries(t))));
    let dh: HEval = Arc::new(move |t| Ok(derivs(entries(t))));
    let r: REval = Arc::new(move |u, v| {
        let hm = h.anti(u) - h.anti(v);
        let (qu, qv) = (f.value(u) / h.value(u), f.value(v) / h.value(v));
        let one = c(1.0);
        Ok(su22_matrix([ZERO, one + hm * qv, ZERO, qu - qv + hm * qu * qv, one, hm, one, ZERO, one - hm * qu, ZERO]))
    });
    ModelSpec::new("su22-m5", 4, Form::NonDifference, hv).with_dh(dh).with_r(r).with_preset("su22-m5-default")
}

/// Elliptic parameterization: z = (i/2) c1 (θ + c2), m = 8 c3 / c1².
pub fn model7_entries(c1: C64, c2: C64, c3: C64, sign: f64, t: C64) -> Result<[C64; 10]> {
    let z = C64::new(0.0, 0.5) * c1 * (t + c2);
    let m = c3 * 8.0 / (c1 * c1);
    let ns = jacobi(JacobiKind::Ns, z, m)?;
    let ds = jacobi(JacobiKind::Ds, z, m)?;
    let nc = jacobi(JacobiKind::Nc, z, m)?;
    let h9 = -c1 * ns * ns / 4.0;
    let diff = C64::new(0.0, 0.5 * sign) * c1 * ds;
    let sum = c1 * nc * (ONE - ns * ns) * (0.5 * sign);
    let (h5, h7) = ((sum + diff) / 2.0, (sum - diff) / 2.0);
    let h8 = sum * sum / (h9 * 4.0) - h9;
    let h3 = h5 * h7 - h9 * h9;
    Ok([-h8, -h9, h3, ZERO, h5, ZERO, h7, h8, h9, ONE])
}

fn model7(p: &Presets) -> ModelSpec {
    let (c1, c2, c3) = (p.constant("su22-m7.c1"), p.constant("su22-m7.c2"), p.constant("su22-m7.c3"));
    let h: HEval = Arc::new(move |t| Ok(su22_matrix(model7_entries(c1, c2, c3, 1.0, t)?)));
    ModelSpec::new("su22-m7-H", 4, Form::NonDifference, h)
        .with_params(&[("c1", c1), ("c2", c2), ("c3", c3), ("m", c3 * 8.0 / (c1 * c1))])
        .with_preset("su22-m7")
}

/// Model-8 R-matrix entries r1..r10.
pub fn model8_r_entries(c2: C64, c3: C64, s: f64, u: C64, v: C64) -> [C64; 10] {
    let a = (c3 * u / 2.0).exp() - (c3 * v / 2.0).exp();
    let b = (c3 * u / 2.0).exp() + (c3 * v / 2.0).exp();
    let sum = u + v;
    let x = c3 * (u - v) / 4.0;
    let c3sq = c3 * c3;
    let r1 = (-c3 * sum / 4.0).exp() * (c3sq * a * a - c2 * 16.0 * (c3 * sum).exp() * (x * 2.0).sinh()) / (c3sq * b * 2.0);
    let r2 = x.cosh().inv();
    let r3 = c3 / 4.0 * x.tanh();
    let r4 = -(-c3 * sum / 4.0).exp() * a * (c3sq - c2 * 8.0 * (c3 * sum / 2.0).exp()) / (c3sq * 2.0 * s);
    let r6 = c2 * 8.0 * (c3 * sum / 4.0).exp() * a / (c3sq * s) - r4;
    let r8 = (r4 + r6) * s + r1;
    [r1, r2, r3, r4, ONE, r6, ONE, r8, r2, -r3 * 16.0 / c3sq]
}

fn model8(p: &Presets, s: f64) -> ModelSpec {
    let (c2, c3) = (p.constant("su22-m8.c2"), p.constant("su22-m8.c3"));
    let entries = move |t: C64| {
        let e = (Dual::var(t) * c3).exp();
        let x = e * (c2 * 2.0 / c3);
        let d = Dual::cst(-c3 * (0.5 * s));
        let sm = e * (c2 * 4.0 * s / c3);
        let z = Dual::re(0.0);
        [z, -x, Dual::cst(-c3 * c3 / 16.0), z, (sm + d).scale(0.5), z, (sm - d).scale(0.5), z, x, Dual::re(1.0)]
    };
    let h: HEval = Arc::new(move |t| Ok(values(entries(t))));
    let dh: HEval = Arc::new(move |t| Ok(derivs(entries(t))));
    let r: REval = Arc::new(move |u, v| Ok(su22_matrix(model8_r_entries(c2, c3, s, u, v))));
    ModelSpec::new(&signed_id("su22-m8", s), 4, Form::NonDifference, h)
        .with_dh(dh)
        .with_r(r)
        .with_params(&[("c2", c2), ("c3", c3), ("sign", c(s))])
        .with_preset("su22-m8")
}

/// K = Σ E_ij ⊗ E_ij on C^4 ⊗ C^4.
pub fn so4_k() -> CMat {
    let mut k = CMat::zeros(16, 16);
    for i in 0..4 {
        for j in 0..4 {
            k[(idx(i, i), idx(j, j))] = ONE;
        }
    }
    k
}

fn levi_civita(p: [usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Σ ε_ijkl E_ik ⊗ E_jl with ε_1234 = 1.
pub fn so4_eps() -> CMat {
    let mut m = CMat::zeros(16, 16);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let e = levi_civita([i, j, k, l]);
                    if e != 0.0 {
                        m[(idx(i, j), idx(k, l))] += c(e);
                    }
                }
            }
        }
    }
    m
}

fn so4(p: &Presets) -> ModelSpec {
    let (h1, h2, h4) = (p.func("so4.h1"), p.func("so4.h2"), p.func("so4.h4"));
    let (pm, km, em) = (perm(4), so4_k(), so4_eps());
    let (pk, eps_h) = (&pm - &km, em.clone());
    let build = move |a: C64, b: C64, d: C64| {
        let mut m = CMat::identity(16).scale(a);
        m += &pk.scale(b);
        m += &eps_h.scale(d);
        m
    };
    let hb = build.clone();
    let h: HEval = Arc::new(move |t| Ok(hb(h1.value(t), h2.value(t), h4.value(t))));
    let dh: HEval = Arc::new(move |t| Ok(build(h1.deriv(t), h2.deriv(t), h4.deriv(t))));
    let r: REval = Arc::new(move |u, v| {
        let a1 = h1.anti(u) - h1.anti(v);
        let a2 = h2.anti(u) - h2.anti(v);
        let a4 = h4.anti(u) - h4.anti(v);
        let den = a2 + 1.0;
        let mut m = CMat::identity(16).scale(a2 - a4 * a4 / den);
        m += &pm;
        m -= &(&km.scale(a2) + &em.scale(a4)).scale(den.inv());
        Ok(m.scale(a1.exp()))
    });
    ModelSpec::new("so4", 4, Form::QuasiDifference, h).with_dh(dh).with_r(r).with_preset("so4-default")
}

fn ghub(p: &Presets) -> ModelSpec {
    let (lam, xi, tau) = (p.constant("ghub.lambda"), p.constant("ghub.xi"), p.constant("ghub.tau"));
    let one = c(1.0);
    let rho1 = C64::new(0.0, 1.0) * (lam * lam - 1.0).sqrt();
    let rho2 = (one - lam * lam) / xi;
    let h_entries = vec![
        (0, 0, -lam),
        (1, 1, lam),
        (1, 11, rho2),
        (1, 14, -rho2),
        (2, 8, rho1),
        (3, 12, rho1),
        (4, 4, lam),
        (4, 11, -rho2),
        (4, 14, rho2),
        (5, 5, -lam),
        (6, 9, rho1),
        (7, 13, rho1),
        (8, 2, -rho1),
        (9, 6, -rho1),
        (10, 15, tau * lam),
        (11, 1, -xi),
        (11, 4, xi),
        (11, 14, -lam),
        (12, 3, -rho1),
        (13, 7, -rho1),
        (14, 1, xi),
        (14, 4, -xi),
        (14, 11, -lam),
        (15, 10, lam / tau),
    ];
    let zero_param = [lam, xi, tau].iter().any(|x| x.norm() == 0.0);
    let hm = CMat::from_entries(16, &h_entries);
    let h: HEval = Arc::new(move |t| {
        if zero_param {
            return Err(domain_error("ghub", t, "λ, ξ and τ must be non-zero"));
        }
        Ok(hm.clone())
    });
    let r: REval = Arc::new(move |u, v| {
        if zero_param {
            return Err(domain_error("ghub", u, "λ, ξ and τ must be non-zero"));
        }
        let x = u - v;
        let (th, sh, ch) = (x.tanh(), x.sinh(), x.cosh());
        let den = one - lam * th;
        let sech = ch.inv();
        let r1 = ch - lam * sh;
        let r2 = (one - lam * lam) * sh * th / den;
        let r3 = rho1 * sh;
        let r4 = -r3;
        let r5 = ch;
        let r6 = -sh * (lam - th) / den;
        let r7 = one;
        let r8 = (one - lam * lam) * th / (xi * den);
        let r9 = -xi * th / den;
        let r10 = one;
        let r11 = sech / den;
        let r12 = sech * (c(2.0) - lam * (x * 2.0).sinh() + lam * lam * sh * sh * 2.0) / (den * 2.0);
        let r13 = tau * lam * sh;
        let r14 = lam * sh / tau;
        Ok(CMat::from_entries(
            16,
            &[
                (0, 0, r1),
                (1, 1, r2),
                (1, 4, r11),
                (1, 11, -r8),
                (1, 14, r8),
                (2, 2, r4),
                (2, 8, r10),
                (3, 3, r4),
                (3, 12, r10),
                (4, 1, r11),
                (4, 4, r2),
                (4, 11, r8),
                (4, 14, -r8),
                (5, 5, r1),
                (6, 6, r4),
                (6, 9, r10),
                (7, 7, r4),
                (7, 13, r10),
                (8, 2, r7),
                (8, 8, r3),
                (9, 6, r7),
                (9, 9, r3),
                (10, 10, r5),
                (10, 15, r13),
                (11, 1, -r9),
                (11, 4, r9),
                (11, 11, r6),
                (11, 14, r12),
                (12, 3, r7),
                (12, 12, r3),
                (13, 7, r7),
                (13, 13, r3),
                (14, 1, r9),
                (14, 4, -r9),
                (14, 11, r12),
                (14, 14, r6),
                (15, 10, r14),
                (15, 15, r5),
            ],
        ))
    });
    ModelSpec::new("ghub", 4, Form::Difference, h)
        .with_dh(Arc::new(|_| Ok(CMat::zeros(16, 16))))
        .with_r(r)
        .with_params(&[("lambda", lam), ("xi", xi), ("tau", tau)])
        .with_preset("ghub-default")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_reader_inverts_builder() {
        let x: [C64; 10] = std::array::from_fn(|i| C64::new(i as f64 + 1.0, 0.1 * i as f64));
        assert_eq!(su22_coefficients(&su22_matrix(x)), x);
    }

    #[test]
    fn builder_matches_printed_entries() {
        let x: [C64; 10] = std::array::from_fn(|i| c(i as f64 + 1.0));
        let m = su22_matrix(x);
        // (1,11) = h10, (11,1) = h3, (2,8) = h7, (8,2) = h5 in 0-based indices.
        assert_eq!(m[(1, 11)], c(10.0));
        assert_eq!(m[(11, 1)], c(3.0));
        assert_eq!(m[(2, 8)], c(7.0));
        assert_eq!(m[(8, 2)], c(5.0));
    }

    #[test]
    fn model7_constraints_hold_by_construction() {
        let e = model7_entries(c(1.0), C64::new(0.3, 0.2), C64::new(0.1, 0.05), 1.0, c(0.3)).unwrap();
        assert!((e[0] + e[7]).norm() < 1e-14);
        assert!((e[1] + e[8]).norm() < 1e-14);
    }
}
