//! Fourth-order central differences along the real direction.

use num_complex::Complex64 as C64;

use crate::catalog::Domain;
use crate::cmat::CMat;
use crate::error::Result;

/// Step h = 1e-4 · max(1, |θ|).
pub fn step(t: C64) -> f64 {
    1e-4 * t.norm().max(1.0)
}

/// True when every stencil point t ± k·h (k = 1, 2) stays inside the padded box.
pub fn fits(domain: &Domain, t: C64) -> bool {
    let h = step(t);
    [-2.0, -1.0, 0.0, 1.0, 2.0].iter().all(|k| domain.contains_padded(t + k * h))
}

/// (−f(t+2h) + 8f(t+h) − 8f(t−h) + f(t−2h)) / 12h
pub fn central<F>(f: F, t: C64) -> Result<CMat>
where
    F: Fn(C64) -> Result<CMat>,
{
    let h = step(t);
    let mut d = f(t + h)? - f(t - h)?;
    d = d.scale_re(8.0);
    d -= &f(t + 2.0 * h)?;
    d += &f(t - 2.0 * h)?;
    Ok(d.scale_re(1.0 / (12.0 * h)))
}
