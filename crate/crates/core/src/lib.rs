//! Numerical core for the cosine-λ transform on Grassmann manifolds
//! `Gr(p, 𝕂ⁿ)`, `𝕂 ∈ {ℝ, ℂ, ℍ}`.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. It covers:
//!
//! * [`manifold`]: frames, Haar sampling, principal angles, `|Cos(σ, ω)|`
//!   and the polar-coordinate map `t ↦ exp Y(t)·β`.
//! * [`specfun`]: the multivariate gamma `Γ_{p,d}`, the normalizer `γ(λ)`,
//!   pole bookkeeping and the integration densities `δ_k`, `ν_k^m`.
//! * [`spectrum`]: spherical highest weights and the closed-form K-spectrum
//!   `η_μ(λ)`.
//! * [`transform`]: `C^λ` by quadrature and Monte Carlo, the continuation of
//!   `γ(λ)C^λ` to the poles `λ = -1, …, -p`, the partial cosine-Funk
//!   transforms and the Funk evaluation.
//! * [`zonal`]: an independent rank ≤ 2 eigenfunction oracle.
//!
//! Every transform uses the unit-mass invariant measure, so `C^λ 1 = η_0(λ)`.
#![no_std]
// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// float methods come from `num_traits::Float`; test builds also see std's
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

mod error;
mod jet;
mod linalg;

pub mod manifold;
pub mod profile;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;
pub mod transform;
pub mod zonal;

pub use error::{Error, Result};
pub use jet::Jet;
pub use linalg::CMatrix;
pub use manifold::{AngleCoords, Field, GrassmannianSpec, Subspace, Unitary};
pub use profile::{AngleFn, One, Polynomial, Profile};
pub use quadrature::{QuadratureConfig, Scheme};
pub use specfun::MeromorphicScalar;
pub use spectrum::HighestWeight;
pub use transform::{ContinuationLimit, McEstimate, RunningStats};
pub use zonal::{ZonalBasis, ZonalEntry};
