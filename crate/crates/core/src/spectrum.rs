//! Spherical highest weights and the K-spectrum `η_μ(λ)` of `C^λ`.

use alloc::vec::Vec;
use core::fmt;

use crate::manifold::{Field, GrassmannianSpec};
use crate::specfun::{push_gamma_pd, Ledger, MeromorphicScalar};

/// A highest weight `μ = (m_1, …, m_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    pub m: Vec<i64>,
}

impl HighestWeight {
    pub fn new(m: Vec<i64>) -> Self {
        Self { m }
    }

    pub fn zero(p: usize) -> Self {
        Self { m: alloc::vec![0; p] }
    }

    /// `|μ| = Σ m_i`.
    pub fn size(&self) -> i64 {
        self.m.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }

    /// Whether `μ` is a spherical weight of `spec`: all entries even,
    /// `m_1 ≥ … ≥ m_{p−1} ≥ |m_p|`, and `m_p < 0` only for `p = q ≥ 2`
    /// over ℝ.
    pub fn is_valid_for(&self, spec: &GrassmannianSpec) -> bool {
        let m = &self.m;
        if m.len() != spec.p() || m.iter().any(|x| x % 2 != 0) {
            return false;
        }
        let p = m.len();
        if m[..p - 1].windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if p >= 2 && m[p - 2] < m[p - 1].abs() {
            return false;
        }
        m[p - 1] >= 0 || allows_negative_last(spec)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.m.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn allows_negative_last(spec: &GrassmannianSpec) -> bool {
    spec.p() == spec.q() && spec.p() >= 2 && spec.field() == Field::Real
}

/// All spherical highest weights with `m_1 ≤ max_degree`, in lexicographic
/// order.
pub fn enumerate_weights(spec: &GrassmannianSpec, max_degree: u32) -> Vec<HighestWeight> {
    let top = (max_degree / 2 * 2) as i64;
    let p = spec.p();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p);
    fill(spec, p, top, &mut current, &mut out);
    out.sort();
    out
}

fn fill(spec: &GrassmannianSpec, p: usize, bound: i64, current: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
    if current.len() == p {
        out.push(HighestWeight::new(current.clone()));
        return;
    }
    let last = current.len() == p - 1;
    let low = if last && allows_negative_last(spec) { -bound } else { 0 };
    let mut m = low;
    while m <= bound {
        current.push(m);
        fill(spec, p, m, current, out);
        current.pop();
        m += 2;
    }
}

/// Weights that a strict reading `m_{p−1} > |m_p|` of the `p = q` real case
/// would drop from [`enumerate_weights`].
pub fn strict_reading_exclusions(spec: &GrassmannianSpec, max_degree: u32) -> Vec<HighestWeight> {
    if !allows_negative_last(spec) {
        return Vec::new();
    }
    let p = spec.p();
    enumerate_weights(spec, max_degree)
        .into_iter()
        .filter(|w| w.m[p - 2] <= w.m[p - 1].abs())
        .collect()
}

fn eta_ledger(spec: &GrassmannianSpec, mu: &HighestWeight, lam: f64) -> Ledger {
    assert_eq!(mu.m.len(), spec.p(), "weight length must equal the rank");
    let p = spec.p();
    let d = spec.d();
    let df = d as f64;
    let (n, pf) = (spec.n() as f64, p as f64);
    let mut l = Ledger::at(lam);
    push_gamma_pd(&mut l, p, d, 0.0, |_| df * n / 2.0, 1);
    push_gamma_pd(&mut l, p, d, 0.0, |_| df * pf / 2.0, -1);
    push_gamma_pd(&mut l, p, d, df / 2.0, |_| df * pf / 2.0, 1);
    push_gamma_pd(&mut l, p, d, -df / 2.0, |j| mu.m[j] as f64 / 2.0, 1);
    push_gamma_pd(&mut l, p, d, -df / 2.0, |_| 0.0, -1);
    push_gamma_pd(&mut l, p, d, df / 2.0, |j| (df * n + mu.m[j] as f64) / 2.0, -1);
    if (mu.size() / 2) % 2 != 0 {
        l.scale(-1.0);
    }
    l
}

/// The eigenvalue `η_μ(λ)` of `C^λ` on the K-type `μ`.
pub fn eta(spec: &GrassmannianSpec, mu: &HighestWeight, lam: f64) -> MeromorphicScalar {
    eta_ledger(spec, mu, lam).finish()
}

/// `γ(λ)·η_μ(λ)`, where `γ(λ) = 1/Γ_{p,d}((d/2)(λ+p))`.
pub fn gamma_eta(spec: &GrassmannianSpec, mu: &HighestWeight, lam: f64) -> MeromorphicScalar {
    let df = spec.d() as f64;
    let pf = spec.p() as f64;
    let mut l = eta_ledger(spec, mu, lam);
    push_gamma_pd(&mut l, spec.p(), spec.d(), df / 2.0, |_| df * pf / 2.0, -1);
    l.finish()
}

/// The continuation of `η_μ/η_0` at `lam0`.
///
/// The ratio is a product of rising factorials
/// `(x_j)_{m_j/2} / (y_j)_{m_j/2}` with `x_j = −dλ/2 − d(j−1)/2` and
/// `y_j = d(λ+n)/2 − d(j−1)/2`, so every common gamma factor cancels before
/// anything is evaluated.
pub fn eta_ratio_ac(spec: &GrassmannianSpec, mu: &HighestWeight, lam0: f64) -> MeromorphicScalar {
    assert_eq!(mu.m.len(), spec.p(), "weight length must equal the rank");
    let df = spec.d() as f64;
    let n = spec.n() as f64;
    let mut l = Ledger::at(lam0);
    for (j, &m) in mu.m.iter().enumerate() {
        let shift = df * j as f64 / 2.0;
        rising(&mut l, -df / 2.0, -shift, m / 2, 1);
        rising(&mut l, df / 2.0, df * n / 2.0 - shift, m / 2, -1);
    }
    if (mu.size() / 2) % 2 != 0 {
        l.scale(-1.0);
    }
    l.finish()
}

/// `Γ(x + k)/Γ(x)` with `x = slope·λ + intercept`, raised to `power`.
fn rising(l: &mut Ledger, slope: f64, intercept: f64, k: i64, power: i32) {
    if k >= 0 {
        for i in 0..k {
            l.linear(slope, intercept + i as f64, power);
        }
    } else {
        for i in k..0 {
            l.linear(slope, intercept + i as f64, -power);
        }
    }
}

/// Whether the K-type `μ` lies in the image of the partial Funk transform
/// `F_1`: `m_2 = … = m_p = 0`.
pub fn f1_image_member(mu: &HighestWeight) -> bool {
    mu.m.iter().skip(1).all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(p: usize, q: usize, field: Field) -> GrassmannianSpec {
        GrassmannianSpec::new(p, q, field).unwrap()
    }

    fn w(m: &[i64]) -> HighestWeight {
        HighestWeight::new(m.to_vec())
    }

    #[test]
    fn enumeration_gr2_r5() {
        let got = enumerate_weights(&spec(2, 3, Field::Real), 4);
        let want: Vec<HighestWeight> = [[0, 0], [2, 0], [2, 2], [4, 0], [4, 2], [4, 4]].iter().map(|m| w(m)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn enumeration_degree_zero() {
        for s in [spec(1, 2, Field::Real), spec(3, 3, Field::Real), spec(2, 4, Field::Quaternion)] {
            assert_eq!(enumerate_weights(&s, 0), vec![HighestWeight::zero(s.p())]);
        }
    }

    #[test]
    fn enumeration_square_real_case_has_negative_last_entry() {
        let s = spec(2, 2, Field::Real);
        let got = enumerate_weights(&s, 2);
        assert_eq!(got, vec![w(&[0, 0]), w(&[2, -2]), w(&[2, 0]), w(&[2, 2])]);
        assert!(got.iter().all(|x| x.is_valid_for(&s)));
        assert_eq!(strict_reading_exclusions(&s, 2), vec![w(&[0, 0]), w(&[2, -2]), w(&[2, 2])]);
        assert!(!w(&[2, -2]).is_valid_for(&spec(2, 2, Field::Complex)));
    }

    #[test]
    fn eta_zero_at_zero_is_one() {
        for s in [spec(1, 2, Field::Real), spec(2, 3, Field::Real), spec(2, 3, Field::Complex), spec(1, 2, Field::Quaternion)] {
            let e = eta(&s, &HighestWeight::zero(s.p()), 0.0);
            assert_eq!(e.pole_order, 0);
            assert!((e.value - 1.0).abs() < 1e-13, "{s}: {e:?}");
        }
    }

    #[test]
    fn eta_nonzero_weight_vanishes_at_zero() {
        let s = spec(2, 3, Field::Real);
        for mu in enumerate_weights(&s, 6).into_iter().filter(|m| !m.is_zero()) {
            assert_eq!(eta(&s, &mu, 0.0).finite_value(), Some(0.0), "{mu}");
        }
    }

    #[test]
    fn eta_first_harmonic_on_projective_plane() {
        // φ = (3u - 1)/2 integrated against the λ = 1 kernel
        let e = eta(&spec(1, 2, Field::Real), &w(&[2]), 1.0);
        assert!((e.value - 0.125).abs() < 1e-15);
    }

    #[test]
    fn ratio_examples() {
        let s = spec(2, 3, Field::Real);
        assert_eq!(eta_ratio_ac(&s, &w(&[0, 0]), -1.0).finite_value(), Some(1.0));
        assert_eq!(eta_ratio_ac(&s, &w(&[2, 2]), -1.0).finite_value(), Some(0.0));
        assert!(eta_ratio_ac(&s, &w(&[4, 0]), -1.0).finite_value().unwrap().abs() > 1e-3);
        let sq = spec(2, 2, Field::Real);
        assert_eq!(eta_ratio_ac(&sq, &w(&[2, -2]), -1.0).finite_value(), Some(0.0));
    }

    #[test]
    fn ratio_matches_direct_quotient_at_regular_points() {
        let s = spec(2, 3, Field::Complex);
        for mu in enumerate_weights(&s, 6) {
            let direct = eta(&s, &mu, 0.7).value / eta(&s, &HighestWeight::zero(2), 0.7).value;
            let ratio = eta_ratio_ac(&s, &mu, 0.7).value;
            assert!((direct - ratio).abs() <= 1e-12 * direct.abs().max(1e-300), "{mu}");
        }
    }

    #[test]
    fn normalized_eta_is_finite_at_minus_one() {
        let s = spec(2, 2, Field::Real);
        for mu in enumerate_weights(&s, 8) {
            assert!(gamma_eta(&s, &mu, -1.0).pole_order <= 0, "{mu}");
        }
    }

    #[test]
    fn image_membership() {
        assert!(f1_image_member(&w(&[6, 0, 0])));
        assert!(!f1_image_member(&w(&[2, 2])));
        assert!(f1_image_member(&w(&[0, 0, 0])));
    }
}
