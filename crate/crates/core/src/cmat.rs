//! Dense complex matrices on small tensor-product spaces.
//!
//! Basis order is lexicographic in the site indices with site 1 slowest, so a
//! two-site basis vector `e_i ⊗ e_j` has index `i*n + j`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Largest total dimension n^L accepted for a chain.
pub const DIM_CEILING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("unsupported local dimension {0} (expected 2, 3 or 4)")]
    UnsupportedLocalDim(usize),
    #[error("chain length {0} is too short (need at least 2 sites)")]
    ChainTooShort(usize),
    #[error("site index {site} out of range 1..={len}")]
    SiteOutOfRange { site: usize, len: usize },
    #[error("total dimension {0} exceeds the ceiling of {DIM_CEILING}")]
    TooLarge(usize),
    #[error("matrix is singular to working precision")]
    Singular,
}

#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Builds a matrix from row-major entries. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        CMat { rows, cols, data }
    }

    pub fn from_real(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        CMat::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Square matrix with the given (row, col, value) entries, zero elsewhere.
    pub fn from_entries(n: usize, entries: &[(usize, usize, C64)]) -> Self {
        let mut m = CMat::zeros(n, n);
        for &(i, j, v) in entries {
            m[(i, j)] += v;
        }
        m
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = CMat::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> CMat {
        self.scale(C64::new(s, 0.0))
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus; the canonical residual norm.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                // Embedded operators are mostly zeros; skipping them is the
                // difference between 10 ms and 100 ms per 256x256 product.
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b = &other.data[k * p..(k + 1) * p];
                for (r, bv) in row.iter_mut().zip(b) {
                    *r += a * bv;
                }
            }
        }
        CMat { rows: n, cols: p, data: out }
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = CMat::zeros(r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out[(i * r2 + k, j * c2 + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<CMat, TensorError> {
        if !self.is_square() {
            return Err(TensorError::DimMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        let scale = self.max_norm().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() <= 1e-14 * scale {
                return Err(TensorError::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (av, iv) = (a[(col, j)], inv[(col, j)]);
                    a[(r, j)] -= f * av;
                    inv[(r, j)] -= f * iv;
                }
            }
        }
        Ok(inv)
    }

    /// max-norm of A times max-norm of A⁻¹; a cheap condition estimate.
    pub fn condition_estimate(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.max_norm() * inv.max_norm() * self.rows as f64,
            Err(_) => f64::INFINITY,
        }
    }

    /// Partial trace over a leading factor of dimension `d`.
    pub fn partial_trace_first(&self, d: usize) -> Result<CMat, TensorError> {
        if !self.is_square() || self.rows % d != 0 {
            return Err(TensorError::DimMismatch { expected: d, got: self.rows });
        }
        let rest = self.rows / d;
        Ok(CMat::from_fn(rest, rest, |i, j| (0..d).map(|a| self[(a * rest + i, a * rest + j)]).sum()))
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn assert_same_shape(a: &CMat, b: &CMat) {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "shape mismatch: {}x{} vs {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_same_shape(self, rhs);
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_same_shape(self, rhs);
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

impl Mul<C64> for &CMat {
    type Output = CMat;
    fn mul(self, rhs: C64) -> CMat {
        self.scale(rhs)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale_re(-1.0)
    }
}

impl Add for CMat {
    type Output = CMat;
    fn add(self, rhs: CMat) -> CMat {
        &self + &rhs
    }
}

impl Sub for CMat {
    type Output = CMat;
    fn sub(self, rhs: CMat) -> CMat {
        &self - &rhs
    }
}

impl Mul for CMat {
    type Output = CMat;
    fn mul(self, rhs: CMat) -> CMat {
        self.matmul(&rhs)
    }
}

impl AddAssign<&CMat> for CMat {
    fn add_assign(&mut self, rhs: &CMat) {
        assert_same_shape(self, rhs);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&CMat> for CMat {
    fn sub_assign(&mut self, rhs: &CMat) {
        assert_same_shape(self, rhs);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kron(b)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    assert_same_shape(a, b);
    &a.matmul(b) - &b.matmul(a)
}

pub fn max_norm(a: &CMat) -> f64 {
    a.max_norm()
}

/// Residual of `a - b` relative to the larger of the two (never below `floor`).
pub fn relative_residual(a: &CMat, b: &CMat, floor: f64) -> f64 {
    (a - b).max_norm() / a.max_norm().max(b.max_norm()).max(floor)
}

fn check_local_dim(n: usize) -> Result<(), TensorError> {
    if (2..=4).contains(&n) {
        Ok(())
    } else {
        Err(TensorError::UnsupportedLocalDim(n))
    }
}

/// The swap P(e_i ⊗ e_j) = e_j ⊗ e_i on C^n ⊗ C^n.
pub fn permutation(n: usize) -> Result<CMat, TensorError> {
    check_local_dim(n)?;
    Ok(swap(n))
}

pub(crate) fn swap(n: usize) -> CMat {
    let mut p = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(j * n + i, i * n + j)] = ONE;
        }
    }
    p
}

/// Single-site matrix unit E_ij (0-based) on C^n.
pub fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteSpace {
    n: usize,
    len: usize,
}

impl SiteSpace {
    pub fn new(n: usize, len: usize) -> Result<Self, TensorError> {
        check_local_dim(n)?;
        if len < 2 {
            return Err(TensorError::ChainTooShort(len));
        }
        let total = n.checked_pow(len as u32).unwrap_or(usize::MAX);
        if total > DIM_CEILING {
            return Err(TensorError::TooLarge(total));
        }
        Ok(SiteSpace { n, len })
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_dim(&self) -> usize {
        self.n.pow(self.len as u32)
    }

    /// Operator moving the state on site k to site k+1 (site L wraps to 1).
    pub fn cyclic_shift(&self) -> CMat {
        let (n, len) = (self.n, self.len);
        let d = self.total_dim();
        let mut s = CMat::zeros(d, d);
        let last = n.pow(len as u32 - 1);
        for col in 0..d {
            // Digits d1..dL map to dL d1..d(L-1).
            let row = (col % n) * last + col / n;
            s[(row, col)] = ONE;
        }
        s
    }
}

/// `op` acting on `range` consecutive sites starting at `first` (1-based,
/// no wrap-around), identity on the rest.
pub fn embed_block(op: &CMat, space: SiteSpace, first: usize, range: usize) -> Result<CMat, TensorError> {
    let n = space.n;
    let block = n.pow(range as u32);
    if op.rows() != block || op.cols() != block {
        return Err(TensorError::DimMismatch { expected: block, got: op.rows() });
    }
    if first == 0 || first + range - 1 > space.len {
        return Err(TensorError::SiteOutOfRange { site: first, len: space.len });
    }
    let left = CMat::identity(n.pow(first as u32 - 1));
    let right = CMat::identity(n.pow((space.len - first + 1 - range) as u32));
    Ok(left.kron(op).kron(&right))
}

/// Two-site density on sites (j, j+1), with j = L acting on (L, 1).
pub fn embed_pair(h: &CMat, space: SiteSpace, j: usize) -> Result<CMat, TensorError> {
    embed_range(h, space, j, 2)
}

/// `op` on `range` consecutive sites starting at j, wrapping periodically.
/// Wrapped placements are conjugations of an unwrapped one by the cyclic shift.
pub fn embed_range(op: &CMat, space: SiteSpace, j: usize, range: usize) -> Result<CMat, TensorError> {
    let len = space.len;
    if j == 0 || j > len {
        return Err(TensorError::SiteOutOfRange { site: j, len });
    }
    if range > len {
        return Err(TensorError::SiteOutOfRange { site: range, len });
    }
    if j + range - 1 <= len {
        return embed_block(op, space, j, range);
    }
    let overshoot = j + range - 1 - len;
    let base = embed_block(op, space, j - overshoot, range)?;
    let shift = space.cyclic_shift();
    let mut out = base;
    for _ in 0..overshoot {
        out = shift.matmul(&out).matmul(&shift.transpose());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        assert_eq!(CMat::identity(2).kron(&CMat::identity(2)), CMat::identity(4));
    }

    #[test]
    fn raising_lowering_kron_entry() {
        let sp = unit(2, 0, 1);
        let sm = unit(2, 1, 0);
        let k = kron(&sp, &sm);
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (1, 2) { ONE } else { ZERO };
                assert_eq!(k[(i, j)], want);
            }
        }
    }

    #[test]
    fn permutation_two() {
        let want = CMat::from_real(&[
            &[1., 0., 0., 0.],
            &[0., 0., 1., 0.],
            &[0., 1., 0., 0.],
            &[0., 0., 0., 1.],
        ]);
        assert_eq!(permutation(2).unwrap(), want);
        assert!(matches!(permutation(5), Err(TensorError::UnsupportedLocalDim(5))));
    }

    #[test]
    fn inverse_round_trip() {
        let a = CMat::from_vec(3, 3, vec![c(1., 2.), c(0., 1.), c(3., 0.), c(-1., 0.), c(2., 2.), c(0.5, 0.), c(0., 0.), c(1., -1.), c(4., 0.)]);
        let inv = a.inverse().unwrap();
        assert!((&a.matmul(&inv) - &CMat::identity(3)).max_norm() < 1e-14);
        assert_eq!(CMat::zeros(2, 2).inverse(), Err(TensorError::Singular));
    }

    #[test]
    fn cyclic_shift_moves_sites() {
        let space = SiteSpace::new(2, 3).unwrap();
        let s = space.cyclic_shift();
        // e_1 ⊗ e_0 ⊗ e_0 (index 4) moves to e_0 ⊗ e_1 ⊗ e_0 (index 2).
        assert_eq!(s[(2, 4)], ONE);
        let mut p = CMat::identity(8);
        for _ in 0..3 {
            p = s.matmul(&p);
        }
        assert_eq!(p, CMat::identity(8));
    }

    #[test]
    fn site_space_ceiling() {
        assert!(SiteSpace::new(4, 4).is_ok());
        assert_eq!(SiteSpace::new(4, 5), Err(TensorError::TooLarge(1024)));
        assert_eq!(SiteSpace::new(2, 1), Err(TensorError::ChainTooShort(1)));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = CMat::from_vec(2, 2, vec![c(1., 0.), c(2., 1.), c(0., 3.), c(4., 0.)]);
        let b = CMat::from_vec(2, 2, vec![c(0., 1.), c(1., 0.), c(5., 0.), c(-2., 0.)]);
        let pt = a.kron(&b).partial_trace_first(2).unwrap();
        assert!((&pt - &b.scale(a.trace())).max_norm() < 1e-15);
    }
}
