//! One-dimensional rules on `[0, 1]`, compensated summation and polynomial
//! extrapolation.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    TanhSinh,
    GaussLegendre,
}

/// Resolution and tolerances shared by every quadrature-based routine.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Nodes per dimension at the coarsest level; each refinement doubles it.
    pub nodes_per_dim: usize,
    pub scheme: Scheme,
    /// Acceptance threshold on the change between refinement levels.
    pub rel_tol: f64,
    /// Offsets `ε` for continuation limits, strictly decreasing.
    pub extrapolation_epsilons: Vec<f64>,
    /// Acceptance threshold on the disagreement of the last two
    /// extrapolants.
    pub extrapolation_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_dim: 65,
            scheme: Scheme::TanhSinh,
            rel_tol: 1e-11,
            extrapolation_epsilons: vec![0.2, 0.1, 0.05, 0.025, 0.0125],
            extrapolation_tol: 1e-5,
            max_refinements: 3,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_dim < 8 {
            return Err(Error::InvalidConfig("nodes_per_dim must be at least 8".to_string()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("rel_tol must be positive".to_string()));
        }
        if !(self.extrapolation_tol > 0.0) {
            return Err(Error::InvalidConfig("extrapolation_tol must be positive".to_string()));
        }
        let eps = &self.extrapolation_epsilons;
        if eps.iter().any(|&e| !(e > 0.0)) || eps.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidConfig(
                "extrapolation_epsilons must be positive and strictly decreasing".to_string(),
            ));
        }
        Ok(())
    }
}

/// A node on `[0, 1]` with its complement `1 − x` carried separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Node {
    pub x: f64,
    pub xc: f64,
    pub w: f64,
}

/// Half-width of the truncated tanh-sinh abscissa range; at the ends the
/// nodes sit about `1e-275` from the interval ends.
const TANH_SINH_EXTENT: f64 = 6.0;

pub(crate) fn rule(scheme: Scheme, nodes_per_dim: usize, level: u32) -> Vec<Node> {
    let n = (nodes_per_dim - 1) << level;
    match scheme {
        Scheme::TanhSinh => tanh_sinh(n),
        Scheme::GaussLegendre => gauss_legendre(n + 1),
    }
}

/// Tanh-sinh rule with `intervals + 1` abscissae.
fn tanh_sinh(intervals: usize) -> Vec<Node> {
    let h = 2.0 * TANH_SINH_EXTENT / intervals as f64;
    (0..=intervals)
        .map(|k| {
            let t = -TANH_SINH_EXTENT + k as f64 * h;
            let e = (PI * t.sinh()).exp();
            let x = e / (1.0 + e);
            let xc = 1.0 / (1.0 + e);
            Node {
                x,
                xc,
                w: h * PI * t.cosh() * x * xc,
            }
        })
        .filter(|n| n.x > 0.0 && n.xc > 0.0 && n.w > 0.0)
        .collect()
}

/// Gauss–Legendre rule mapped to `[0, 1]`.
fn gauss_legendre(n: usize) -> Vec<Node> {
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes.push(Node {
            x: (1.0 + z) / 2.0,
            xc: (1.0 - z) / 2.0,
            w: w / 2.0,
        });
    }
    nodes.reverse();
    nodes
}

/// Neumaier-compensated sum that also tracks `Σ|x|`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl Accumulator {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn abs_total(&self) -> f64 {
        self.abs
    }
}

/// Value at `0` of the polynomial through `(xs[i], ys[i])`, by Neville's
/// scheme.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "abscissae and values must pair up");
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

/// Polynomial extrapolation to `0` through all points. Returns the estimate
/// and its disagreement with the extrapolant that drops the largest offset.
pub fn richardson(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n >= 2, "extrapolation needs at least two points");
    let all = neville_at_zero(xs, ys);
    let tail = neville_at_zero(&xs[1..], &ys[1..]);
    (all, (all - tail).abs())
}
