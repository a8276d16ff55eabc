//! Small dense complex linear algebra.
//!
//! Everything here works on matrices of a handful of rows and columns, so
//! the routines favour accuracy and simplicity over blocking.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Column-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[Complex64] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn column_mut(&mut self, c: usize) -> &mut [Complex64] {
        let r = self.rows;
        &mut self.data[c * r..(c + 1) * r]
    }

    pub fn set_column(&mut self, c: usize, v: &[Complex64]) {
        self.column_mut(c).copy_from_slice(v);
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            for k in 0..self.cols {
                let b = rhs[(k, j)];
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let col = self.column(k);
                let dst = out.column_mut(j);
                for i in 0..col.len() {
                    dst[i] += col[i] * b;
                }
            }
        }
        out
    }

    /// `self^* * rhs` (conjugate transpose on the left).
    pub fn adjoint_mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in adjoint product");
        CMatrix::from_fn(self.cols, rhs.cols, |i, j| dot(self.column(i), rhs.column(j)))
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Rows `idx` of the matrix, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    let tmp = a[(k, j)];
                    a[(k, j)] = a[(piv, j)];
                    a[(piv, j)] = tmp;
                }
                det = -det;
            }
            let pivot = a[(k, k)];
            det *= pivot;
            for i in k + 1..n {
                let factor = a[(i, k)] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= factor * v;
                }
            }
        }
        det
    }

    /// Modified Gram–Schmidt with one reorthogonalization pass. The implied
    /// `R` factor has a positive real diagonal.
    pub fn orthonormalize(&mut self) -> Result<()> {
        for j in 0..self.cols {
            let mut v: Vec<Complex64> = self.column(j).to_vec();
            let original = norm(&v);
            if original == 0.0 {
                return Err(Error::RankDeficient);
            }
            for _ in 0..2 {
                for k in 0..j {
                    let q = self.column(k);
                    let coef = dot(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= qi * coef;
                    }
                }
            }
            let nv = norm(&v);
            if nv <= 1e-12 * original {
                return Err(Error::RankDeficient);
            }
            for x in v.iter_mut() {
                *x /= nv;
            }
            self.set_column(j, &v);
        }
        Ok(())
    }

    /// Singular values, descending, by one-sided Jacobi.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut a = self.clone();
        let n = a.cols;
        for _sweep in 0..60 {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha = norm_sqr(a.column(i));
                    let beta = norm_sqr(a.column(j));
                    let gamma = dot(a.column(i), a.column(j));
                    let g = gamma.norm();
                    if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for r in 0..a.rows {
                        let x = a[(r, i)];
                        let y = a[(r, j)] * phase.conj();
                        a[(r, i)] = x * c - y * s;
                        a[(r, j)] = x * s + y * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = (0..n).map(|c| norm(a.column(c))).collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(core::cmp::Ordering::Equal));
        sv
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[c * self.rows + r]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[c * self.rows + r]
    }
}

/// `a^* b`.
pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

pub(crate) fn norm(a: &[Complex64]) -> f64 {
    norm_sqr(a).sqrt()
}

/// Right multiplication by the quaternion `j` in the coordinates
/// `(z, v) ∈ ℂⁿ × ℂⁿ` used for the complex embedding of `ℍⁿ`:
/// `J(z, v) = (-v̄, z̄)`.
pub(crate) fn quaternion_j(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len() / 2;
    let (z, v) = x.split_at(n);
    v.iter().map(|c| -c.conj()).chain(z.iter().map(|c| c.conj())).collect()
}

/// Eigenvalues (ascending) of a real symmetric matrix stored row-major.
pub(crate) fn symmetric_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        let diag: f64 = (0..n).map(|i| m[i * n + i] * m[i * n + i]).sum();
        if off <= 1e-30 * diag {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    ev
}
