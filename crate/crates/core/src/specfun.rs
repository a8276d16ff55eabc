//! Multivariate gamma function, the normalizer `γ(λ)`, pole bookkeeping and
//! the integration densities of the polar coordinates.

use core::ops::{Div, Mul};

use num_traits::Float;

use crate::error::{domain, Result};
use crate::manifold::GrassmannianSpec;

/// A value of a meromorphic function together with its order at the
/// evaluation point.
///
/// `pole_order > 0`: `value` is the leading Laurent coefficient.
/// `pole_order == 0`: `value` is the plain value.
/// `pole_order < 0`: a zero of that order, `value` is the leading Taylor
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeromorphicScalar {
    pub value: f64,
    pub pole_order: i32,
}

impl MeromorphicScalar {
    pub fn regular(value: f64) -> Self {
        Self {
            value,
            pole_order: 0,
        }
    }

    /// The value of the continuation at the point, `None` at a pole.
    pub fn finite_value(&self) -> Option<f64> {
        match self.pole_order {
            o if o > 0 => None,
            0 => Some(self.value),
            _ => Some(0.0),
        }
    }

    pub fn is_pole(&self) -> bool {
        self.pole_order > 0
    }
}

impl Mul for MeromorphicScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            pole_order: self.pole_order + rhs.pole_order,
        }
    }
}

impl Div for MeromorphicScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self {
            value: self.value / rhs.value,
            pole_order: self.pole_order - rhs.pole_order,
        }
    }
}

const POLE_TOL: f64 = 1e-12;

fn nonpositive_integer(x: f64) -> Option<u32> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= POLE_TOL * (1.0 + r.abs()) {
        Some((-r) as u32)
    } else {
        None
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Log-space product of gamma and linear factors whose arguments are affine
/// in `λ`, with exact order bookkeeping.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ledger {
    lam: f64,
    log_abs: f64,
    sign: f64,
    order: i32,
}

impl Ledger {
    pub(crate) fn at(lam: f64) -> Self {
        Self {
            lam,
            log_abs: 0.0,
            sign: 1.0,
            order: 0,
        }
    }

    fn absorb(&mut self, c: f64, power: i32) {
        self.log_abs += power as f64 * c.abs().ln();
        if c < 0.0 {
            self.sign = -self.sign;
        }
    }

    /// Multiply by `Γ(slope·λ + intercept)^power`, `power = ±1`. A zero
    /// slope means the argument is treated as a plain variable.
    pub(crate) fn gamma(&mut self, slope: f64, intercept: f64, power: i32) -> &mut Self {
        let x = slope * self.lam + intercept;
        match nonpositive_integer(x) {
            Some(k) => {
                let slope = if slope == 0.0 { 1.0 } else { slope };
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                self.absorb(sign / (factorial(k) * slope), power);
                self.order += power;
            }
            None => {
                let (lg, s) = libm::lgamma_r(x);
                self.log_abs += power as f64 * lg;
                if s < 0 {
                    self.sign = -self.sign;
                }
            }
        }
        self
    }

    /// Multiply by `(slope·λ + intercept)^power`.
    pub(crate) fn linear(&mut self, slope: f64, intercept: f64, power: i32) -> &mut Self {
        let x = slope * self.lam + intercept;
        if x.abs() <= POLE_TOL * (1.0 + intercept.abs()) {
            self.absorb(slope, power);
            self.order -= power;
        } else {
            self.absorb(x, power);
        }
        self
    }

    pub(crate) fn scale(&mut self, c: f64) -> &mut Self {
        self.absorb(c, 1);
        self
    }

    pub(crate) fn finish(&self) -> MeromorphicScalar {
        MeromorphicScalar {
            value: self.sign * self.log_abs.exp(),
            pole_order: self.order,
        }
    }
}

/// `Γ_{p,d}(λ) = ∏_{j=1}^p Γ(λ_j − d(j−1)/2)` at a vector argument.
pub fn gamma_pd(p: usize, d: u32, lam: &[f64]) -> MeromorphicScalar {
    assert_eq!(lam.len(), p, "argument length must equal the rank");
    let mut ledger = Ledger::at(0.0);
    for (j, &x) in lam.iter().enumerate() {
        ledger.gamma(0.0, x - d as f64 * j as f64 / 2.0, 1);
    }
    ledger.finish()
}

/// `Γ_{p,d}(λ, …, λ)`.
pub fn gamma_pd_scalar(p: usize, d: u32, lam: f64) -> MeromorphicScalar {
    let args: alloc::vec::Vec<f64> = alloc::vec![lam; p];
    gamma_pd(p, d, &args)
}

/// Push `Γ_{p,d}(slope·λ + intercept_j)` onto a ledger, `power = ±1`.
pub(crate) fn push_gamma_pd(
    ledger: &mut Ledger,
    p: usize,
    d: u32,
    slope: f64,
    intercept: impl Fn(usize) -> f64,
    power: i32,
) {
    for j in 0..p {
        ledger.gamma(slope, intercept(j) - d as f64 * j as f64 / 2.0, power);
    }
}

/// `γ(λ) = 1/Γ_{p,d}((d/2)(λ+p))`, zero where the gamma product has a pole.
pub fn normalizer_gamma(spec: &GrassmannianSpec, lam: f64) -> f64 {
    let d = spec.d() as f64;
    let g = gamma_pd_scalar(spec.p(), spec.d(), d * (lam + spec.p() as f64) / 2.0);
    if g.pole_order > 0 {
        0.0
    } else {
        1.0 / g.value
    }
}

/// Order of the pole of `C^λ` at `lam0`: the pole order of
/// `Γ_{p,d}((d/2)(λ+p))` there.
pub fn pole_order_c(spec: &GrassmannianSpec, lam0: f64) -> u32 {
    let d = spec.d() as f64;
    (0..spec.p())
        .filter(|&j| nonpositive_integer(d * (lam0 + spec.p() as f64) / 2.0 - d * j as f64 / 2.0).is_some())
        .count() as u32
}

/// The polar-coordinate density `δ_k` in the `p − k` free angles.
pub fn density_delta(spec: &GrassmannianSpec, k: usize, t: &[f64]) -> f64 {
    assert!(k < spec.p(), "drop index must be below the rank");
    assert_eq!(t.len(), spec.p() - k, "expected p - k angles");
    let d = spec.d() as i32;
    let sin_exp = (d - 1 + d * (spec.q() - spec.p()) as i32) as f64;
    let c2: alloc::vec::Vec<f64> = t.iter().map(|x| x.cos() * x.cos()).collect();
    let mut walls = 1.0;
    for i in 0..c2.len() {
        for j in i + 1..c2.len() {
            let gap = (c2[i] - c2[j]).abs();
            if gap == 0.0 {
                return 0.0;
            }
            walls *= gap.powi(d);
        }
    }
    let radial: f64 = t
        .iter()
        .map(|x| (2.0 * x.cos()).abs().powi(d - 1) * x.sin().abs().powf(sin_exp))
        .product();
    radial * walls
}

/// The density `ν_k^m(u) = ∏(1−u_i)^{(d−2+d(q−p))/2} ∏_{i<j} |u_i − u_j|^d`
/// on `m − k` variables.
pub fn density_nu(spec: &GrassmannianSpec, k: usize, m: usize, u: &[f64]) -> Result<f64> {
    if !(k < m && m <= spec.p()) {
        return Err(domain("density_nu needs k < m <= p"));
    }
    if u.len() != m - k {
        return Err(domain("density_nu needs m - k coordinates"));
    }
    if let Some(x) = u.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(domain(alloc::format!("coordinate {x} outside [0, 1]")));
    }
    let d = spec.d() as i32;
    let mut walls = 1.0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let gap = (u[i] - u[j]).abs();
            if gap == 0.0 {
                return Ok(0.0);
            }
            walls *= gap.powi(d);
        }
    }
    let b = boundary_exponent(spec);
    let boundary: f64 = u.iter().map(|x| (1.0 - x).powf(b)).product();
    Ok(boundary * walls)
}

/// Exponent of `(1 − u)` in `ν`.
pub(crate) fn boundary_exponent(spec: &GrassmannianSpec) -> f64 {
    let d = spec.d() as f64;
    (d - 2.0 + d * (spec.q() - spec.p()) as f64) / 2.0
}
