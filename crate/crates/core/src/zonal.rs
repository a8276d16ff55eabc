//! Zonal spherical polynomials for rank `p ≤ 2` and numerically measured
//! eigenvalues of `C^λ`.
//!
//! The zonal function of weight `μ` is a symmetric polynomial in
//! `u_i = cos²t_i` with leading monomial `m_{μ/2}`, orthogonal to every
//! lower weight under the invariant measure. It is built by Gram–Schmidt on
//! monomial symmetric functions in lexicographic order, which refines the
//! dominance order.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::jet::Jet;
use crate::linalg::symmetric_eigenvalues;
use crate::manifold::GrassmannianSpec;
use crate::profile::{Polynomial, Profile};
use crate::quadrature::QuadratureConfig;
use crate::spectrum::{enumerate_weights, HighestWeight};
use crate::transform::u_ratio;

const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct ZonalEntry {
    pub weight: HighestWeight,
    /// The zonal polynomial, normalized to `1` at `u = (1, …, 1)`.
    pub poly: Polynomial,
}

impl Profile for ZonalEntry {
    fn eval(&self, u: &[f64]) -> f64 {
        self.poly.eval(u)
    }

    fn eval_jet(&self, u: &[Jet]) -> Option<Jet> {
        self.poly.eval_jet(u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZonalBasis {
    pub spec: GrassmannianSpec,
    pub entries: Vec<ZonalEntry>,
    /// Condition number of the scaled Gram matrix of the monomials.
    pub condition: f64,
}

impl ZonalBasis {
    pub fn entry(&self, mu: &HighestWeight) -> Option<&ZonalEntry> {
        self.entries.iter().find(|e| &e.weight == mu)
    }
}

/// The monomial symmetric function `m_κ` in `κ.len()` variables.
pub fn monomial_symmetric(kappa: &[u32]) -> Polynomial {
    let vars = kappa.len();
    let mut perms: Vec<Vec<u32>> = Vec::new();
    permutations(kappa.to_vec(), 0, &mut perms);
    perms.sort();
    perms.dedup();
    let mut poly = Polynomial::zero(vars);
    for e in perms {
        poly.add_term(1.0, e);
    }
    poly
}

fn permutations(mut v: Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == v.len() {
        out.push(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v.clone(), k + 1, out);
        v.swap(k, i);
    }
}

/// Zonal polynomials for every weight with `m_1 ≤ max_degree` and `m_p ≥ 0`.
pub fn build_zonal_basis(spec: &GrassmannianSpec, max_degree: u32, cfg: &QuadratureConfig) -> Result<ZonalBasis> {
    cfg.validate()?;
    if spec.p() > 2 {
        return Err(Error::Unsupported("the zonal oracle covers rank p <= 2".to_string()));
    }
    if !max_degree.is_multiple_of(2) {
        return Err(domain("max_degree must be even"));
    }
    let weights: Vec<HighestWeight> = enumerate_weights(spec, max_degree)
        .into_iter()
        .filter(|w| w.m.iter().all(|&x| x >= 0))
        .collect();
    let monomials: Vec<Polynomial> = weights
        .iter()
        .map(|w| monomial_symmetric(&w.m.iter().map(|&x| (x / 2) as u32).collect::<Vec<_>>()))
        .collect();
    let k = monomials.len();
    let mut gram = vec![0.0; k * k];
    for a in 0..k {
        for b in a..k {
            let v = u_ratio(spec, &monomials[a].mul(&monomials[b]), 0.0, cfg)?;
            gram[a * k + b] = v;
            gram[b * k + a] = v;
        }
    }
    let scaled: Vec<f64> = (0..k * k)
        .map(|i| gram[i] / (gram[(i / k) * (k + 1)] * gram[(i % k) * (k + 1)]).sqrt())
        .collect();
    let ev = symmetric_eigenvalues(&scaled, k);
    let condition = ev[k - 1] / ev[0];
    if !(ev[0] > 0.0) || condition > MAX_CONDITION {
        return Err(Error::IllConditioned(if ev[0] > 0.0 { condition } else { f64::INFINITY }));
    }

    let inner = |x: &[f64], y: &[f64]| -> f64 {
        let mut s = 0.0;
        for a in 0..k {
            for b in 0..k {
                s += x[a] * gram[a * k + b] * y[b];
            }
        }
        s
    };
    let mut coeffs: Vec<Vec<f64>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut v = vec![0.0; k];
        v[i] = 1.0;
        for _ in 0..2 {
            for prev in &coeffs {
                let c = inner(&v, prev) / inner(prev, prev);
                for (vi, pi) in v.iter_mut().zip(prev) {
                    *vi -= c * pi;
                }
            }
        }
        coeffs.push(v);
    }
    let ones = vec![1.0; spec.p()];
    let entries = weights
        .into_iter()
        .zip(&coeffs)
        .map(|(weight, c)| {
            let mut poly = Polynomial::zero(spec.p());
            for (ci, m) in c.iter().zip(&monomials) {
                if *ci != 0.0 {
                    poly = poly.add(&m.scale(*ci));
                }
            }
            let at_one = poly.eval(&ones);
            ZonalEntry {
                weight,
                poly: poly.scale(1.0 / at_one),
            }
        })
        .collect();
    Ok(ZonalBasis {
        spec: *spec,
        entries,
        condition,
    })
}

/// `⟨f, g⟩` under the unit-mass invariant measure.
pub fn inner_product(spec: &GrassmannianSpec, f: &Polynomial, g: &Polynomial, cfg: &QuadratureConfig) -> Result<f64> {
    u_ratio(spec, &f.mul(g), 0.0, cfg)
}

/// The eigenvalue of `C^λ` on the zonal function of weight `mu`, measured
/// as `C^λ φ_μ(β)` with `φ_μ(β) = 1`.
pub fn eigenvalue_numeric(
    spec: &GrassmannianSpec,
    basis: &ZonalBasis,
    mu: &HighestWeight,
    lam: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    if basis.spec != *spec {
        return Err(Error::SpecMismatch);
    }
    if !(spec.d() as f64 * lam > -1.0) {
        return Err(domain("cosine transform needs d*lambda > -1"));
    }
    let entry = basis
        .entry(mu)
        .ok_or_else(|| domain(alloc::format!("weight {mu} is not in the zonal basis")))?;
    u_ratio(spec, entry, lam, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::Field;

    #[test]
    fn monomial_symmetric_functions() {
        let m = monomial_symmetric(&[2, 1]);
        assert_eq!(m.eval(&[2.0, 3.0]), 4.0 * 3.0 + 9.0 * 2.0);
        let m = monomial_symmetric(&[1, 1]);
        assert_eq!(m.terms().len(), 1);
    }

    #[test]
    fn projective_plane_first_zonal() {
        let s = GrassmannianSpec::new(1, 2, Field::Real).unwrap();
        let basis = build_zonal_basis(&s, 4, &QuadratureConfig::default()).unwrap();
        assert_eq!(basis.entries.len(), 3);
        assert!((basis.entries[0].poly.eval(&[0.3]) - 1.0).abs() < 1e-13);
        // orthogonal to 1 under u^{-1/2}: (3u - 1)/2
        let phi = &basis.entries[1].poly;
        for u in [0.0, 0.4, 1.0] {
            assert!((phi.eval(&[u]) - (3.0 * u - 1.0) / 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rank_three_is_rejected() {
        let s = GrassmannianSpec::new(3, 3, Field::Real).unwrap();
        assert!(matches!(
            build_zonal_basis(&s, 2, &QuadratureConfig::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
