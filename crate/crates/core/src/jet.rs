//! Truncated multivariate Taylor series.
//!
//! A [`Jet`] carries the Taylor coefficients of a function of a few variables
//! around a point, truncated per variable. The continuation of the coordinate
//! integrals past their poles needs mixed partial derivatives of the smooth
//! part of the integrand, and jets deliver them exactly for polynomial
//! profiles.

use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Float;
use smallvec::{smallvec, SmallVec};

/// Inline capacity; larger jets spill to the heap.
type Shape = SmallVec<[usize; 4]>;
type Coefs = SmallVec<[f64; 8]>;

/// Arithmetic shared by `f64` and [`Jet`], so integrands can be written once.
pub trait Scalar:
    Clone
    + Add<Self, Output = Self>
    + Sub<Self, Output = Self>
    + Mul<Self, Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
{
    /// A constant with the same truncation as `self`.
    fn constant_like(&self, c: f64) -> Self;
    fn pow_int(&self, n: u32) -> Self;
    /// Real power; the constant term must be positive unless `a` is a
    /// non-negative integer.
    fn pow_real(&self, a: f64) -> Self;
}

impl Scalar for f64 {
    fn constant_like(&self, c: f64) -> f64 {
        c
    }

    fn pow_int(&self, n: u32) -> f64 {
        let mut acc = 1.0;
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    fn pow_real(&self, a: f64) -> f64 {
        if a == 0.0 {
            1.0
        } else if a.fract() == 0.0 && a > 0.0 && a < 64.0 {
            self.pow_int(a as u32)
        } else {
            Float::powf(*self, a)
        }
    }
}

/// Taylor coefficients `c_k` of `Σ_k c_k x^k` with `k_j < shape[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    shape: Shape,
    coef: Coefs,
}

impl Jet {
    pub fn constant(shape: &[usize], c: f64) -> Self {
        assert!(shape.iter().all(|&s| s >= 1), "jet truncation must keep the constant term");
        let len = shape.iter().product();
        let mut coef: Coefs = smallvec![0.0; len];
        coef[0] = c;
        Self {
            shape: Shape::from_slice(shape),
            coef,
        }
    }

    /// The jet of `x_j` at `x_j = value`.
    pub fn variable(shape: &[usize], j: usize, value: f64) -> Self {
        let mut jet = Self::constant(shape, value);
        if shape[j] > 1 {
            let stride: usize = shape[..j].iter().product();
            jet.coef[stride] = 1.0;
        }
        jet
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Coefficient of `x^k`; zero beyond the truncation.
    pub fn coefficient(&self, k: &[usize]) -> f64 {
        let mut idx = 0;
        let mut stride = 1;
        for (kj, &sj) in k.iter().zip(&self.shape) {
            if *kj >= sj {
                return 0.0;
            }
            idx += kj * stride;
            stride *= sj;
        }
        self.coef[idx]
    }

    fn max_degree(&self) -> usize {
        self.shape.iter().map(|s| s - 1).sum()
    }

    fn is_constant(&self) -> bool {
        self.coef[1..].iter().all(|&c| c == 0.0)
    }

    fn zip_with(&self, rhs: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        assert_eq!(self.shape, rhs.shape, "jets with different truncations");
        Jet {
            shape: self.shape.clone(),
            coef: self.coef.iter().zip(&rhs.coef).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Jet {
        Jet {
            shape: self.shape.clone(),
            coef: self.coef.iter().map(|&a| f(a)).collect(),
        }
    }

    fn product(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.shape, rhs.shape, "jets with different truncations");
        let n = self.coef.len();
        let dims = self.shape.len();
        let mut out: Coefs = smallvec![0.0; n];
        if self.shape.iter().all(|&s| s == 1 || s == n) {
            // one active variable: a truncated convolution
            for k in 0..n {
                out[k] = (0..=k).map(|i| self.coef[i] * rhs.coef[k - i]).sum();
            }
            return Jet {
                shape: self.shape.clone(),
                coef: out,
            };
        }
        let mut ia: Shape = smallvec![0; dims];
        for a in 0..n {
            let ca = self.coef[a];
            if ca != 0.0 {
                // walk b as an odometer; positions with a digit overflow are skipped
                let mut ib: Shape = smallvec![0; dims];
                for b in 0..n {
                    let cb = rhs.coef[b];
                    if cb != 0.0 {
                        let mut flat = 0;
                        let mut stride = 1;
                        let mut inside = true;
                        for j in 0..dims {
                            let k = ia[j] + ib[j];
                            if k >= self.shape[j] {
                                inside = false;
                                break;
                            }
                            flat += k * stride;
                            stride *= self.shape[j];
                        }
                        if inside {
                            out[flat] += ca * cb;
                        }
                    }
                    advance(&mut ib, &self.shape);
                }
            }
            advance(&mut ia, &self.shape);
        }
        Jet {
            shape: self.shape.clone(),
            coef: out,
        }
    }
}

/// Next multi-index in column-major order.
fn advance(index: &mut [usize], shape: &[usize]) {
    for (i, s) in index.iter_mut().zip(shape) {
        *i += 1;
        if *i < *s {
            return;
        }
        *i = 0;
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        if rhs.is_constant() {
            return self * rhs.coef[0];
        }
        if self.is_constant() {
            return rhs * self.coef[0];
        }
        self.product(&rhs)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coef[0] += rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.map(|a| a * rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map(|a| -a)
    }
}

impl Scalar for Jet {
    fn constant_like(&self, c: f64) -> Jet {
        Jet::constant(&self.shape, c)
    }

    fn pow_int(&self, n: u32) -> Jet {
        let mut acc = self.constant_like(1.0);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn pow_real(&self, a: f64) -> Jet {
        if a.fract() == 0.0 && (0.0..64.0).contains(&a) {
            return self.pow_int(a as u32);
        }
        let c0 = self.coef[0];
        assert!(c0 > 0.0, "real power of a jet needs a positive constant term");
        if self.is_constant() {
            return self.constant_like(Float::powf(c0, a));
        }
        // c0^a (1 + h)^a with nilpotent h
        let mut h = self.clone() * (1.0 / c0);
        h.coef[0] = 0.0;
        let mut sum = self.constant_like(1.0);
        let mut term = self.constant_like(1.0);
        let mut binom = 1.0;
        for k in 1..=self.max_degree() {
            binom *= (a - (k - 1) as f64) / k as f64;
            term = term * h.clone();
            sum = sum + term.clone() * binom;
        }
        sum * Float::powf(c0, a)
    }
}
