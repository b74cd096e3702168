//! Elliptic-kernel reference cases shared by the core tests and the acceptance run.

use num_complex::Complex64 as C64;
use ybelab_core::elliptic::{check_identities, sncndn};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Integrates sn' = cn dn, cn' = -sn dn, dn' = -m sn cn along the straight
/// segment from 0 to z with classical RK4.
pub fn ode_oracle(z: C64, m: C64, steps: usize) -> [C64; 3] {
    let f = |y: [C64; 3]| -> [C64; 3] { [z * y[1] * y[2], -z * y[0] * y[2], -z * m * y[0] * y[1]] };
    let add = |y: [C64; 3], k: [C64; 3], s: f64| [y[0] + k[0] * s, y[1] + k[1] * s, y[2] + k[2] * s];
    let h = 1.0 / steps as f64;
    let mut y = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
    for _ in 0..steps {
        let k1 = f(y);
        let k2 = f(add(y, k1, h / 2.0));
        let k3 = f(add(y, k2, h / 2.0));
        let k4 = f(add(y, k3, h));
        for i in 0..3 {
            y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    y
}

/// 20 (z, m) pairs, complex m included.
pub fn oracle_points() -> Vec<(C64, C64)> {
    vec![
        (c(0.3, 0.2), c(0.6, 0.1)),
        (c(0.5, 0.0), c(0.0, 0.0)),
        (c(1.1, 0.0), c(0.25, 0.0)),
        (c(0.4, -0.7), c(0.9, 0.3)),
        (c(-0.8, 0.3), c(0.16, 0.0)),
        (c(0.9, 0.9), c(0.5, -0.5)),
        (c(1.2, -0.1), c(0.99, 0.0)),
        (c(0.2, 1.0), c(-0.4, 0.2)),
        (c(-1.0, -0.4), c(0.8, 0.4)),
        (c(0.7, 0.05), c(0.1, 0.05)),
        (c(0.05, 0.6), c(0.32, 0.0)),
        (c(1.3, 0.4), c(0.2, -0.3)),
        (c(-0.6, -0.9), c(0.45, 0.45)),
        (c(0.35, 0.15), c(0.8, 0.4)),
        (c(0.0, -0.5), c(0.7, -0.2)),
        (c(0.95, -0.35), c(-0.3, -0.6)),
        (c(0.25, 0.75), c(0.05, 0.9)),
        (c(-1.4, 0.2), c(0.6, 0.0)),
        (c(0.6, -0.6), c(1.5, 0.2)),
        (c(0.15, 0.1), c(2.2, -1.0)),
    ]
}

/// 10 × 10 cell-centred grid on [-1,1] × [-0.9,0.9].
pub fn grid() -> Vec<C64> {
    let mut pts = Vec::new();
    for i in 0..10 {
        for j in 0..10 {
            pts.push(c(-1.0 + 2.0 * (i as f64 + 0.5) / 10.0, -0.9 + 1.8 * (j as f64 + 0.5) / 10.0));
        }
    }
    pts
}

/// Max deviation from the RK4 oracle over the oracle points.
pub fn ode_error() -> f64 {
    oracle_points()
        .into_iter()
        .map(|(z, m)| {
            let v = sncndn(z, m).unwrap();
            let o = ode_oracle(z, m, 4000);
            (v.sn - o[0]).norm().max((v.cn - o[1]).norm()).max((v.dn - o[2]).norm())
        })
        .fold(0.0, f64::max)
}

/// Max deviation from the trigonometric (m → 0) and hyperbolic (m → 1) limits on the grid.
pub fn degeneration_error() -> f64 {
    let one = c(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for z in grid() {
        for m in [c(0.0, 0.0), c(1e-13, 0.0), c(0.0, 1e-13)] {
            let v = sncndn(z, m).unwrap();
            worst = worst.max((v.sn - z.sin()).norm().max((v.cn - z.cos()).norm()).max((v.dn - one).norm()));
        }
        let sech = one / z.cosh();
        for m in [c(1.0, 0.0), c(1.0 - 1e-13, 0.0)] {
            let v = sncndn(z, m).unwrap();
            worst = worst.max((v.sn - z.tanh()).norm().max((v.cn - sech).norm()).max((v.dn - sech).norm()));
        }
    }
    worst
}

pub const GRID_PARAMETERS: [(f64, f64); 5] = [(0.3, 0.0), (0.6, 0.1), (0.9, 0.3), (-0.5, 0.2), (0.8, 0.4)];

/// Max of the parity defects (relative) and the Pythagorean identity residual on the grid.
pub fn parity_identity_error() -> f64 {
    let mut worst: f64 = 0.0;
    for z in grid() {
        for (mr, mi) in GRID_PARAMETERS {
            let m = c(mr, mi);
            let a = sncndn(z, m).unwrap();
            let b = sncndn(-z, m).unwrap();
            worst = worst
                .max((a.sn + b.sn).norm() / (1.0 + a.sn.norm()))
                .max((a.cn - b.cn).norm() / (1.0 + a.cn.norm()))
                .max((a.dn - b.dn).norm() / (1.0 + a.dn.norm()))
                .max(check_identities(z, m).unwrap());
        }
    }
    worst
}
