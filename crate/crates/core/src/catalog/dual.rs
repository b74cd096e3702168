//! First-order dual numbers: a value and its θ-derivative carried together,
//! so one formula for a density yields both H(θ) and dH/dθ.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use super::ScalarFn;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: C64,
    pub d: C64,
}

impl Dual {
    pub fn cst(v: C64) -> Self {
        Dual { v, d: C64::new(0.0, 0.0) }
    }

    pub fn re(v: f64) -> Self {
        Dual::cst(C64::new(v, 0.0))
    }

    pub fn var(v: C64) -> Self {
        Dual { v, d: C64::new(1.0, 0.0) }
    }

    /// f(θ) with its derivative.
    pub fn of(f: &ScalarFn, t: C64) -> Self {
        Dual { v: f.value(t), d: f.deriv(t) }
    }

    /// Antiderivative F(θ) with F' = f.
    pub fn anti(f: &ScalarFn, t: C64) -> Self {
        Dual { v: f.anti(t), d: f.value(t) }
    }

    /// f'(θ) with its derivative.
    pub fn deriv(f: &ScalarFn, t: C64) -> Self {
        Dual { v: f.deriv(t), d: f.deriv2(t) }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Dual { v: e, d: e * self.d }
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Dual { v: s, d: self.d / (s * 2.0) }
    }

    pub fn scale(self, k: f64) -> Self {
        Dual { v: self.v * k, d: self.d * k }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, o: f64) -> Dual {
        Dual { v: self.v + o, d: self.d }
    }
}

impl Sub<f64> for Dual {
    type Output = Dual;
    fn sub(self, o: f64) -> Dual {
        Dual { v: self.v - o, d: self.d }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, o: f64) -> Dual {
        self.scale(o)
    }
}

impl Mul<C64> for Dual {
    type Output = Dual;
    fn mul(self, o: C64) -> Dual {
        Dual { v: self.v * o, d: self.d * o }
    }
}

impl Div<C64> for Dual {
    type Output = Dual;
    fn div(self, o: C64) -> Dual {
        Dual { v: self.v / o, d: self.d / o }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_rule_matches_difference_quotient() {
        let f = |x: Dual| (x * x + 1.0).sqrt() / (x.exp() - 0.3);
        let t = C64::new(0.4, 0.1);
        let h = 1e-6;
        let fd = (f(Dual::cst(t + h)).v - f(Dual::cst(t - h)).v) / (2.0 * h);
        assert!((f(Dual::var(t)).d - fd).norm() < 1e-9);
    }
}
