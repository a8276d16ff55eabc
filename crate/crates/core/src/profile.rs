//! L-invariant functions through their profile in the polar coordinates.
//!
//! A profile is evaluated at `u = (cos²t_1, …, cos²t_p)` where
//! `t_1 ≥ … ≥ t_p`, so `u_1 ≤ … ≤ u_p`. Every such function is even and
//! π-periodic in each angle.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Float;

use crate::jet::{Jet, Scalar};

pub trait Profile {
    fn eval(&self, u: &[f64]) -> f64;

    /// Taylor jet of the profile when the arguments are jets. Needed by the
    /// continuation past the first pole; `None` if the profile cannot
    /// provide it.
    fn eval_jet(&self, _u: &[Jet]) -> Option<Jet> {
        None
    }

    /// Profile value in terms of the angles.
    fn eval_angles(&self, t: &[f64]) -> f64 {
        let u: Vec<f64> = t.iter().map(|x| x.cos() * x.cos()).collect();
        self.eval(&u)
    }
}

/// A polynomial in `c_i = cos²t_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    vars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(c, alloc::vec![0; vars]);
        p
    }

    /// The variable `c_i` (zero based).
    pub fn variable(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable index out of range");
        let mut e = alloc::vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(1.0, e);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// `(coefficient, exponents)` pairs, combined and without zeros.
    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn add_term(&mut self, c: f64, exponents: Vec<u32>) {
        assert_eq!(exponents.len(), self.vars, "exponent vector length");
        if let Some(t) = self.terms.iter_mut().find(|t| t.1 == exponents) {
            t.0 += c;
        } else {
            self.terms.push((c, exponents));
        }
        self.terms.retain(|t| t.0 != 0.0);
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars, "polynomials in different variables");
        let mut out = self.clone();
        for (c, e) in &other.terms {
            out.add_term(*c, e.clone());
        }
        out
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (c, e) in &self.terms {
            out.add_term(c * s, e.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars, "polynomials in different variables");
        let mut out = Polynomial::zero(self.vars);
        for (a, ea) in &self.terms {
            for (b, eb) in &other.terms {
                out.add_term(a * b, ea.iter().zip(eb).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.vars, 1.0);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.iter().sum()).max().unwrap_or(0)
    }

    pub(crate) fn eval_generic<S: Scalar>(&self, u: &[S]) -> S {
        assert_eq!(u.len(), self.vars, "wrong number of arguments");
        let mut acc = u[0].constant_like(0.0);
        for (c, e) in &self.terms {
            let mut term = u[0].constant_like(*c);
            for (x, &k) in u.iter().zip(e) {
                if k > 0 {
                    term = term * x.pow_int(k);
                }
            }
            acc = acc + term;
        }
        acc
    }
}

impl Profile for Polynomial {
    fn eval(&self, u: &[f64]) -> f64 {
        self.eval_generic(u)
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        Some(self.eval_generic(u))
    }
}

/// A profile given as a function of the angles `t`.
pub struct AngleFn<F>(pub F);

impl<F: Fn(&[f64]) -> f64> Profile for AngleFn<F> {
    fn eval(&self, u: &[f64]) -> f64 {
        let t: Vec<f64> = u.iter().map(|x| x.clamp(0.0, 1.0).sqrt().acos()).collect();
        (self.0)(&t)
    }

    fn eval_angles(&self, t: &[f64]) -> f64 {
        (self.0)(t)
    }
}

impl<P: Profile + ?Sized> Profile for &P {
    fn eval(&self, u: &[f64]) -> f64 {
        (**self).eval(u)
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        (**self).eval_jet(u)
    }

    fn eval_angles(&self, t: &[f64]) -> f64 {
        (**self).eval_angles(t)
    }
}

impl<P: Profile + ?Sized> Profile for Box<P> {
    fn eval(&self, u: &[f64]) -> f64 {
        (**self).eval(u)
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        (**self).eval_jet(u)
    }

    fn eval_angles(&self, t: &[f64]) -> f64 {
        (**self).eval_angles(t)
    }
}

/// The constant profile `1`.
pub struct One;

impl Profile for One {
    fn eval(&self, _u: &[f64]) -> f64 {
        1.0
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        Some(Jet::constant(u[0].shape(), 1.0))
    }
}

/// `f` with its first `pinned` arguments fixed at `u = 0` (angles `π/2`).
pub(crate) struct Pinned<'a, P: ?Sized> {
    pub inner: &'a P,
    pub pinned: usize,
}

impl<P: Profile + ?Sized> Profile for Pinned<'_, P> {
    fn eval(&self, u: &[f64]) -> f64 {
        let mut full = alloc::vec![0.0; self.pinned];
        full.extend_from_slice(u);
        self.inner.eval(&full)
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        let zero = Jet::constant(u[0].shape(), 0.0);
        let mut full = alloc::vec![zero; self.pinned];
        full.extend_from_slice(u);
        self.inner.eval_jet(&full)
    }

    fn eval_angles(&self, t: &[f64]) -> f64 {
        let mut full = alloc::vec![core::f64::consts::FRAC_PI_2; self.pinned];
        full.extend_from_slice(t);
        self.inner.eval_angles(&full)
    }
}
