//! Free-function presets with closed-form antiderivatives.
//!
//! Config files are plain `key = value` lines. Constants take a complex
//! literal (`0.3`, `-1.5i`, `0.1+0.05i`); functions take `poly:c0,c1,c2`,
//! `exp:a,k` or `cos:a,w`. A bare literal for a function key means a
//! constant function.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Result, YbeError};

/// Scalar function of θ with value, first two derivatives and antiderivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    /// c0 + c1 θ + c2 θ²; antiderivative vanishes at 0.
    Poly { c0: C64, c1: C64, c2: C64 },
    /// a e^{kθ}; antiderivative (a/k) e^{kθ} (a θ when k = 0).
    Exp { a: C64, k: C64 },
    /// a cos(wθ); antiderivative (a/w) sin(wθ).
    Cos { a: C64, w: C64 },
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl ScalarFn {
    pub fn constant(c: f64) -> Self {
        ScalarFn::Poly { c0: re(c), c1: re(0.0), c2: re(0.0) }
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        ScalarFn::Poly { c0: re(c0), c1: re(c1), c2: re(0.0) }
    }

    pub fn quadratic(c0: f64, c1: f64, c2: f64) -> Self {
        ScalarFn::Poly { c0: re(c0), c1: re(c1), c2: re(c2) }
    }

    pub fn exp(a: f64, k: f64) -> Self {
        ScalarFn::Exp { a: re(a), k: re(k) }
    }

    pub fn cos(a: f64, w: f64) -> Self {
        ScalarFn::Cos { a: re(a), w: re(w) }
    }

    pub fn value(&self, t: C64) -> C64 {
        match *self {
            ScalarFn::Poly { c0, c1, c2 } => c0 + t * (c1 + t * c2),
            ScalarFn::Exp { a, k } => a * (k * t).exp(),
            ScalarFn::Cos { a, w } => a * (w * t).cos(),
        }
    }

    pub fn deriv(&self, t: C64) -> C64 {
        match *self {
            ScalarFn::Poly { c1, c2, .. } => c1 + t * c2 * 2.0,
            ScalarFn::Exp { a, k } => a * k * (k * t).exp(),
            ScalarFn::Cos { a, w } => -a * w * (w * t).sin(),
        }
    }

    pub fn deriv2(&self, t: C64) -> C64 {
        match *self {
            ScalarFn::Poly { c2, .. } => c2 * 2.0,
            ScalarFn::Exp { a, k } => a * k * k * (k * t).exp(),
            ScalarFn::Cos { a, w } => -a * w * w * (w * t).cos(),
        }
    }

    pub fn anti(&self, t: C64) -> C64 {
        match *self {
            ScalarFn::Poly { c0, c1, c2 } => t * (c0 + t * (c1 / 2.0 + t * c2 / 3.0)),
            ScalarFn::Exp { a, k } => {
                if k == C64::new(0.0, 0.0) {
                    a * t
                } else {
                    a / k * (k * t).exp()
                }
            }
            ScalarFn::Cos { a, w } => {
                if w == C64::new(0.0, 0.0) {
                    a * t
                } else {
                    a / w * (w * t).sin()
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        let zero = C64::new(0.0, 0.0);
        match *self {
            ScalarFn::Poly { c1, c2, .. } => c1 == zero && c2 == zero,
            ScalarFn::Exp { a, k } => k == zero || a == zero,
            ScalarFn::Cos { a, w } => w == zero || a == zero,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), a),
            None => {
                let c = parse_complex(s)?;
                return Ok(ScalarFn::Poly { c0: c, c1: re(0.0), c2: re(0.0) });
            }
        };
        let vals = args.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
        let arg = |i: usize| vals.get(i).copied().unwrap_or(re(0.0));
        match kind {
            "poly" if (1..=3).contains(&vals.len()) => Ok(ScalarFn::Poly { c0: arg(0), c1: arg(1), c2: arg(2) }),
            "exp" if vals.len() == 2 => Ok(ScalarFn::Exp { a: arg(0), k: arg(1) }),
            "cos" if vals.len() == 2 => Ok(ScalarFn::Cos { a: arg(0), w: arg(1) }),
            _ => Err(YbeError::Preset(format!("cannot parse function '{s}'"))),
        }
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFn::Poly { c0, c1, c2 } => {
                write!(f, "poly:{},{},{}", format_complex(*c0), format_complex(*c1), format_complex(*c2))
            }
            ScalarFn::Exp { a, k } => write!(f, "exp:{},{}", format_complex(*a), format_complex(*k)),
            ScalarFn::Cos { a, w } => write!(f, "cos:{},{}", format_complex(*a), format_complex(*w)),
        }
    }
}

/// Parses "a+bi", "a", "bi", "-i", "1e-3-2.5i". Whitespace is ignored.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || YbeError::Preset(format!("invalid complex literal '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let r = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(r, imag(&body[k..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Named constants and functions used by the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct Presets {
    functions: BTreeMap<String, ScalarFn>,
    constants: BTreeMap<String, C64>,
}

impl Default for Presets {
    fn default() -> Self {
        default_presets()
    }
}

pub fn default_presets() -> Presets {
    let f = |pairs: &[(&str, ScalarFn)]| pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let c = |pairs: &[(&str, C64)]| pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Presets {
        functions: f(&[
            ("xxznd.h1", ScalarFn::constant(1.0)),
            ("xxznd.h2", ScalarFn::linear(1.0, 1.0)),
            ("6vb.h4", ScalarFn::linear(1.0, 0.5)),
            ("6vb.h5", ScalarFn::exp(1.0, 1.0 / 3.0)),
            ("8va.h1", ScalarFn::constant(0.1)),
            ("8va.h2", ScalarFn::linear(0.2, 0.1)),
            ("8va.h6", ScalarFn::linear(1.0, 0.3)),
            ("8vb.eta", ScalarFn::linear(FRAC_PI_2, 0.2)),
            ("offdiag.h3", ScalarFn::linear(0.5, 1.0)),
            ("offdiag.h7", ScalarFn::cos(1.0, 1.0)),
            ("15v-c2.g1", ScalarFn::constant(0.7)),
            ("15v-c2.g2", ScalarFn::constant(0.3)),
            ("15v-c2.g", ScalarFn::constant(0.5)),
            ("so4.h1", ScalarFn::constant(0.3)),
            ("so4.h2", ScalarFn::linear(1.0, 1.0)),
            ("so4.h4", ScalarFn::exp(1.0, 0.5)),
            ("su22.f", ScalarFn::constant(0.4)),
            ("su22.g", ScalarFn::linear(0.9, 0.1)),
            ("su22.h", ScalarFn::exp(1.0, 0.2)),
            ("su22-m5.f", ScalarFn::linear(0.0, 1.0)),
            ("su22-m5.g", ScalarFn::quadratic(-1.0, 0.0, 1.0)),
            ("su22-m5.h", ScalarFn::constant(1.0)),
        ]),
        constants: c(&[
            ("xxz.c", re(0.7)),
            ("xxznd.c3", re(2.0)),
            ("xxznd.c4", re(0.5)),
            ("8va.c3", re(0.6)),
            ("8va.c7", re(0.4)),
            ("8va.c8", re(0.3)),
            ("8vb.k", re(0.4)),
            ("15v-c1.a", re(0.7)),
            ("15v-c1.b", re(1.3)),
            ("15v-c1.c", re(0.4)),
            ("15v-c2.a", re(0.6)),
            ("15v-c2.b", re(0.2)),
            ("su22.c", re(1.3)),
            ("su22.c1", re(0.7)),
            ("su22.c2", re(1.1)),
            ("su22-m1.c", re(0.5)),
            ("su22-m7.c1", re(1.0)),
            ("su22-m7.c2", C64::new(0.3, 0.2)),
            ("su22-m7.c3", C64::new(0.1, 0.05)),
            ("su22-m8.c2", re(0.6)),
            ("su22-m8.c3", re(1.4)),
            ("ghub.lambda", re(0.5)),
            ("ghub.xi", re(1.3)),
            ("ghub.tau", re(0.8)),
        ]),
    }
}

impl Presets {
    /// Function preset by key. Panics on an unknown key: keys are fixed by the catalog.
    pub fn func(&self, key: &str) -> ScalarFn {
        *self.functions.get(key).unwrap_or_else(|| panic!("no function preset '{key}'"))
    }

    pub fn constant(&self, key: &str) -> C64 {
        *self.constants.get(key).unwrap_or_else(|| panic!("no constant preset '{key}'"))
    }

    pub fn set_func(&mut self, key: &str, f: ScalarFn) -> Result<()> {
        match self.functions.get_mut(key) {
            Some(slot) => {
                *slot = f;
                Ok(())
            }
            None => Err(YbeError::Preset(format!("unknown function key '{key}'"))),
        }
    }

    pub fn set_constant(&mut self, key: &str, c: C64) -> Result<()> {
        match self.constants.get_mut(key) {
            Some(slot) => {
                *slot = c;
                Ok(())
            }
            None => Err(YbeError::Preset(format!("unknown constant key '{key}'"))),
        }
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, &ScalarFn)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &C64)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Applies `key = value` lines on top of the current values.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| YbeError::Preset(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if self.functions.contains_key(key) {
                self.set_func(key, ScalarFn::parse(value)?)?;
            } else if self.constants.contains_key(key) {
                self.set_constant(key, parse_complex(value)?)?;
            } else {
                return Err(YbeError::Preset(format!("line {}: unknown key '{key}'", lineno + 1)));
            }
        }
        Ok(())
    }

    pub fn from_config(text: &str) -> Result<Self> {
        let mut p = default_presets();
        p.apply_config(text)?;
        Ok(p)
    }

    /// All entries in config syntax; round-trips through `from_config`.
    pub fn to_config(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.functions {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (k, v) in &self.constants {
            out.push_str(&format!("{k} = {}\n", format_complex(*v)));
        }
        out
    }
}

/// (f·ḣ − h·ḟ)/(h(f² − g h)), the integrand of the su22 model-5
/// reparameterization x(u) = ∫ integrand.
pub fn su22_m5_reparam_integrand(f: &ScalarFn, g: &ScalarFn, h: &ScalarFn, t: C64) -> C64 {
    let (fv, gv, hv) = (f.value(t), g.value(t), h.value(t));
    (fv * h.deriv(t) - hv * f.deriv(t)) / (hv * (fv * fv - gv * hv))
}
