//! Jacobi elliptic functions for complex argument and complex parameter.
//!
//! Convention: `sn(z|m)` where `m = k²`. A formula written as `sn(x, k²)` is
//! evaluated here as `jacobi(Sn, x, k*k)`.
//!
//! Evaluation uses the descending Landen transformation in its rational form,
//! which has no branch ambiguity beyond the principal `sqrt(1 - m)`. For
//! `|m| > 1` the reciprocal-modulus transformation is applied first.

use num_complex::Complex64 as C64;
use thiserror::Error;

/// Distance to a pole (or zero of a denominator) below which evaluation is refused.
pub const POLE_RADIUS: f64 = 1e-8;
/// Parameter size at which the trigonometric seed takes over.
pub const SEED_THRESHOLD: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobiKind {
    Sn,
    Cn,
    Dn,
    Ns,
    Nc,
    Cs,
    Ds,
}

impl JacobiKind {
    pub const ALL: [JacobiKind; 7] =
        [JacobiKind::Sn, JacobiKind::Cn, JacobiKind::Dn, JacobiKind::Ns, JacobiKind::Nc, JacobiKind::Cs, JacobiKind::Ds];

    pub fn name(self) -> &'static str {
        match self {
            JacobiKind::Sn => "sn",
            JacobiKind::Cn => "cn",
            JacobiKind::Dn => "dn",
            JacobiKind::Ns => "ns",
            JacobiKind::Nc => "nc",
            JacobiKind::Cs => "cs",
            JacobiKind::Ds => "ds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("{kind} evaluated within {radius:e} of a pole at z = {z}, m = {m}")]
    PoleProximity { kind: &'static str, z: C64, m: C64, radius: f64 },
    #[error("Landen descent did not converge after {MAX_ITERATIONS} steps (m = {m})")]
    NonConvergence { m: C64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnCnDn {
    pub sn: C64,
    pub cn: C64,
    pub dn: C64,
}

/// sn, cn, dn together. Fails only on non-convergence or when the point sits
/// on top of a lattice pole (non-finite intermediate values).
pub fn sncndn(z: C64, m: C64) -> Result<SnCnDn, EllipticError> {
    let one = C64::new(1.0, 0.0);
    if m.norm() > 1.0 {
        // sn(z|m) = sn(√m z | 1/m)/√m, cn(z|m) = dn(√m z | 1/m), dn(z|m) = cn(√m z | 1/m).
        let k = m.sqrt();
        let inner = landen(z * k, one / m)?;
        return Ok(SnCnDn { sn: inner.sn / k, cn: inner.dn, dn: inner.cn });
    }
    landen(z, m)
}

fn landen(z: C64, m: C64) -> Result<SnCnDn, EllipticError> {
    let one = C64::new(1.0, 0.0);
    if (m - one).norm() == 0.0 {
        let sech = one / z.cosh();
        return Ok(SnCnDn { sn: z.tanh(), cn: sech, dn: sech });
    }
    // Descend: store the modulus k_{j+1} of each step.
    let mut moduli: Vec<C64> = Vec::new();
    let mut mj = m;
    while mj.norm() >= SEED_THRESHOLD {
        if moduli.len() >= MAX_ITERATIONS {
            return Err(EllipticError::NonConvergence { m });
        }
        let kp = (one - mj).sqrt();
        let k1 = mj / ((one + kp) * (one + kp));
        moduli.push(k1);
        mj = k1 * k1;
    }
    let mut arg = z;
    for k1 in &moduli {
        arg /= one + k1;
    }
    // First-order seed in the (tiny) parameter mj.
    let (s, c) = (arg.sin(), arg.cos());
    let corr = (arg - s * c) * mj / 4.0;
    let mut sn = s - corr * c;
    let mut cn = c + corr * s;
    let mut dn = one - mj * s * s / 2.0;
    // Ascend back through the stored moduli.
    for k1 in moduli.iter().rev() {
        let sn2 = sn * sn;
        let den = one + k1 * sn2;
        let new_sn = (one + k1) * sn / den;
        let new_cn = cn * dn / den;
        // (1 - k1 sn²)/(1 + k1 sn²) avoids the cancellation in the
        // dn²-based form when k1 is small.
        dn = (one - k1 * sn2) / den;
        sn = new_sn;
        cn = new_cn;
    }
    Ok(SnCnDn { sn, cn, dn })
}

fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// One Jacobi function of the requested kind.
///
/// Pole distance is read off the values: near a lattice pole |dn| ≈ 1/dist,
/// near a zero of sn |sn| ≈ dist, near a zero of cn |cn| ≈ |k'|·dist.
pub fn jacobi(kind: JacobiKind, z: C64, m: C64) -> Result<C64, EllipticError> {
    let pole = || EllipticError::PoleProximity { kind: kind.name(), z, m, radius: POLE_RADIUS };
    let v = sncndn(z, m)?;
    let lattice_pole = !is_finite(v.sn) || !is_finite(v.cn) || !is_finite(v.dn) || v.dn.norm() * POLE_RADIUS >= 1.0;
    let out = match kind {
        JacobiKind::Sn | JacobiKind::Cn | JacobiKind::Dn => {
            if lattice_pole {
                return Err(pole());
            }
            match kind {
                JacobiKind::Sn => v.sn,
                JacobiKind::Cn => v.cn,
                _ => v.dn,
            }
        }
        JacobiKind::Ns | JacobiKind::Cs | JacobiKind::Ds => {
            if !is_finite(v.sn) || v.sn.norm() <= POLE_RADIUS {
                return Err(pole());
            }
            match kind {
                JacobiKind::Ns => v.sn.inv(),
                JacobiKind::Cs => v.cn / v.sn,
                _ => v.dn / v.sn,
            }
        }
        JacobiKind::Nc => {
            let kp = (C64::new(1.0, 0.0) - m).sqrt().norm();
            if !is_finite(v.cn) || v.cn.norm() <= POLE_RADIUS * kp.max(f64::MIN_POSITIVE) {
                return Err(pole());
            }
            v.cn.inv()
        }
    };
    if is_finite(out) {
        Ok(out)
    } else {
        Err(pole())
    }
}

/// max(|sn²+cn²−1|, |dn²+m·sn²−1|).
pub fn check_identities(z: C64, m: C64) -> Result<f64, EllipticError> {
    let sn = jacobi(JacobiKind::Sn, z, m)?;
    let cn = jacobi(JacobiKind::Cn, z, m)?;
    let dn = jacobi(JacobiKind::Dn, z, m)?;
    let one = C64::new(1.0, 0.0);
    Ok((sn * sn + cn * cn - one).norm().max((dn * dn + m * sn * sn - one).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn degenerate_parameters() {
        let sn0 = jacobi(JacobiKind::Sn, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((sn0 - c(0.479_425_538_604_203, 0.0)).norm() < 1e-15);
        let sn1 = jacobi(JacobiKind::Sn, c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!((sn1 - c(0.462_117_157_260_009_8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identities_at_zero() {
        assert_eq!(check_identities(c(0.0, 0.0), c(0.3, 0.7)).unwrap(), 0.0);
    }

    #[test]
    fn known_value_real_parameter() {
        // sn(1 | 0.5), cn, dn from standard tables.
        let v = sncndn(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v.sn.re - 0.803_001_824_895_643_9).abs() < 1e-14);
        assert!((v.cn.re - 0.595_976_567_672_140_7).abs() < 1e-14);
        assert!((v.dn.re - 0.823_161_001_631_596_2).abs() < 1e-14);
    }

    #[test]
    fn reciprocal_modulus_branch() {
        let z = c(0.3, 0.1);
        let m = c(2.5, 0.4);
        assert!(check_identities(z, m).unwrap() < 1e-13);
    }

    #[test]
    fn pole_is_rejected() {
        // At m = 0.5 the first pole of sn on the imaginary axis is i·K(0.5).
        let kprime = 1.854_074_677_301_372;
        let err = jacobi(JacobiKind::Sn, c(0.0, kprime), c(0.5, 0.0));
        assert!(matches!(err, Err(EllipticError::PoleProximity { .. })));
        let err = jacobi(JacobiKind::Ns, c(0.0, 0.0), c(0.5, 0.0));
        assert!(matches!(err, Err(EllipticError::PoleProximity { .. })));
        let err = jacobi(JacobiKind::Nc, c(kprime, 0.0), c(0.5, 0.0));
        assert!(matches!(err, Err(EllipticError::PoleProximity { .. })));
        // cs stays finite at a lattice pole of sn.
        assert!(jacobi(JacobiKind::Cs, c(0.0, kprime + 1e-3), c(0.5, 0.0)).is_ok());
    }
}
