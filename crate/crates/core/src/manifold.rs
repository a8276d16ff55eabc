//! Linear-algebra model of `Gr(p, 𝕂ⁿ)`.
//!
//! Frames over ℝ and ℂ are stored as complex `n × p` matrices. A quaternionic
//! frame is stored through the complex embedding `ℍⁿ ≅ ℂ²ⁿ`, `x = z + w j ↦
//! (z, w̄)`, as the `2n × 2p` matrix with columns `(x_1, …, x_p, Jx_1, …,
//! Jx_p)` where `J` is right multiplication by `j`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Error, Result};
use crate::linalg::{dot, norm, quaternion_j, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension `d`.
    pub fn d(self) -> u32 {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(Field::Real),
            "C" | "c" | "complex" => Ok(Field::Complex),
            "H" | "h" | "quaternion" => Ok(Field::Quaternion),
            other => Err(Error::InvalidSpec(alloc::format!("unknown field {other:?}"))),
        }
    }
}

/// `Gr(p, 𝕂ⁿ)` with `n = p + q` and `1 ≤ p ≤ q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannianSpec {
    p: usize,
    q: usize,
    field: Field,
}

impl GrassmannianSpec {
    pub fn new(p: usize, q: usize, field: Field) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidSpec("rank p must be positive".to_string()));
        }
        if q < p {
            return Err(Error::InvalidSpec(alloc::format!("need p <= q, got p = {p}, q = {q}")));
        }
        Ok(Self { p, q, field })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> u32 {
        self.field.d()
    }

    /// Rows of a stored frame.
    pub fn frame_rows(&self) -> usize {
        self.n() * self.multiplicity()
    }

    /// Columns of a stored frame.
    pub fn frame_cols(&self) -> usize {
        self.p * self.multiplicity()
    }

    fn multiplicity(&self) -> usize {
        if self.field == Field::Quaternion {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for GrassmannianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({}, {}^{})", self.p, self.field, self.n())
    }
}

/// A point `t` of the fundamental domain `0 ≤ t_p ≤ … ≤ t_1 ≤ π/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleCoords(Vec<f64>);

impl AngleCoords {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if Self::in_domain(&t) {
            Ok(Self(t))
        } else {
            Err(domain("angles must satisfy 0 <= t_p <= ... <= t_1 <= pi/2"))
        }
    }

    pub fn in_domain(t: &[f64]) -> bool {
        t.iter().all(|x| (0.0..=FRAC_PI_2).contains(x)) && t.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// An element of `Gr(p, 𝕂ⁿ)` given by an orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    spec: GrassmannianSpec,
    frame: CMatrix,
}

impl Subspace {
    /// Wrap a frame, checking its shape and orthonormality to `1e-12`.
    pub fn from_frame(spec: GrassmannianSpec, frame: CMatrix) -> Result<Self> {
        if frame.rows() != spec.frame_rows() || frame.cols() != spec.frame_cols() {
            return Err(Error::SpecMismatch);
        }
        let gram = frame.adjoint_mul(&frame);
        if gram.max_abs_diff(&CMatrix::identity(frame.cols())) > 1e-12 {
            return Err(domain("frame columns are not orthonormal"));
        }
        Ok(Self { spec, frame })
    }

    pub fn spec(&self) -> &GrassmannianSpec {
        &self.spec
    }

    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    /// Squared principal cosines `u_i = cos² t_i` against the base point,
    /// ascending (so `u_1` belongs to the largest angle).
    pub fn cos_squares_to_base(&self) -> Vec<f64> {
        let n = self.spec.n();
        let p = self.spec.p();
        let rows: Vec<usize> = match self.spec.field {
            Field::Quaternion => (0..p).chain(n..n + p).collect(),
            _ => (0..p).collect(),
        };
        let sv = self.frame.select_rows(&rows).singular_values();
        let mut u: Vec<f64> = dedupe(&self.spec, sv).into_iter().map(|c| (c * c).min(1.0)).collect();
        u.reverse();
        u
    }
}

/// A unitary `n × n` matrix over the field, stored like a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    spec: GrassmannianSpec,
    matrix: CMatrix,
}

impl Unitary {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Subspace) -> Subspace {
        assert_eq!(self.spec, x.spec, "unitary and subspace over different spaces");
        Subspace {
            spec: x.spec,
            frame: self.matrix.mul(&x.frame),
        }
    }

    pub fn inverse(&self) -> Unitary {
        Unitary {
            spec: self.spec,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.matrix.det()
    }
}

fn embed_real(spec: &GrassmannianSpec, cols: &[Vec<(usize, f64)>]) -> CMatrix {
    let n = spec.n();
    let k = cols.len();
    let mut m = CMatrix::zeros(spec.frame_rows(), k * spec.multiplicity());
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            m[(i, j)] = Complex64::new(v, 0.0);
            if spec.field == Field::Quaternion {
                m[(n + i, k + j)] = Complex64::new(v, 0.0);
            }
        }
    }
    m
}

/// The base point `β = span(e_1, …, e_p)`.
pub fn base_point(spec: &GrassmannianSpec) -> Subspace {
    let cols: Vec<Vec<(usize, f64)>> = (0..spec.p()).map(|j| alloc::vec![(j, 1.0)]).collect();
    Subspace {
        spec: *spec,
        frame: embed_real(spec, &cols),
    }
}

/// `exp Y(t)·β`: column `j` is `cos t_j e_j + sin t_j e_{n+1−j}`.
pub fn exp_coords(spec: &GrassmannianSpec, t: &[f64]) -> Subspace {
    assert_eq!(t.len(), spec.p(), "expected p angles");
    let n = spec.n();
    let cols: Vec<Vec<(usize, f64)>> = t
        .iter()
        .enumerate()
        .map(|(j, &tj)| alloc::vec![(j, tj.cos()), (n - 1 - j, tj.sin())])
        .collect();
    Subspace {
        spec: *spec,
        frame: embed_real(spec, &cols),
    }
}

fn check_same(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.spec == b.spec {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

/// Quaternionic singular values come in equal pairs; keep one of each.
fn dedupe(spec: &GrassmannianSpec, sorted_desc: Vec<f64>) -> Vec<f64> {
    if spec.field != Field::Quaternion {
        return sorted_desc;
    }
    debug_assert!(sorted_desc.chunks(2).all(|w| (w[0] - w[1]).abs() < 1e-8));
    sorted_desc.into_iter().step_by(2).collect()
}

/// Principal angles between `a` and `b`, descending.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<Vec<f64>> {
    check_same(a, b)?;
    let cross = b.frame.adjoint_mul(&a.frame);
    let cos = dedupe(&a.spec, cross.singular_values());
    // the component of a orthogonal to b gives the sines
    let proj = b.frame.mul(&cross);
    let resid = CMatrix::from_fn(a.frame.rows(), a.frame.cols(), |i, j| a.frame[(i, j)] - proj[(i, j)]);
    let mut sin = dedupe(&a.spec, resid.singular_values());
    sin.reverse();
    let mut angles: Vec<f64> = cos.iter().zip(&sin).map(|(c, s)| s.atan2(*c)).collect();
    angles.sort_by(|x, y| y.partial_cmp(x).unwrap_or(core::cmp::Ordering::Equal));
    Ok(angles)
}

/// `|Cos(a, b)|`, the product of the principal cosines.
pub fn cos_between(a: &Subspace, b: &Subspace) -> Result<f64> {
    check_same(a, b)?;
    let det = b.frame.adjoint_mul(&a.frame).det().norm();
    Ok(match a.spec.field {
        Field::Quaternion => det.sqrt(),
        _ => det,
    }
    .min(1.0))
}

/// Whether `a` contains a vector orthogonal to `b`, up to `tol` on the
/// smallest principal cosine.
pub fn cos_vanishes(a: &Subspace, b: &Subspace, tol: f64) -> Result<bool> {
    check_same(a, b)?;
    if tol <= 0.0 {
        return Err(domain("tolerance must be positive"));
    }
    let sv = b.frame.adjoint_mul(&a.frame).singular_values();
    Ok(sv.last().copied().unwrap_or(1.0) < tol)
}

fn gaussian(rng: &mut ChaCha8Rng, field: Field) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        _ => Complex64::new(re, rng.sample(StandardNormal)),
    }
}

pub(crate) fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Gaussian matrix with `cols` field columns; entries outside `support` are
/// zero. Quaternionic columns are completed by `J` later.
fn gaussian_frame(
    spec: &GrassmannianSpec,
    cols: usize,
    rng: &mut ChaCha8Rng,
    support: impl Fn(usize, usize) -> bool,
) -> CMatrix {
    let n = spec.n();
    let rows = spec.frame_rows();
    let mut m = CMatrix::zeros(rows, cols * spec.multiplicity());
    for j in 0..cols {
        for i in 0..rows {
            if support(i % n, j) {
                m[(i, j)] = gaussian(rng, spec.field);
            }
        }
    }
    m
}

/// Orthonormalize the first `cols` field columns; for ℍ the remaining
/// columns are set to their `J` images.
fn orthonormalize_field(spec: &GrassmannianSpec, m: &mut CMatrix, cols: usize) -> Result<()> {
    if spec.field != Field::Quaternion {
        return m.orthonormalize();
    }
    for j in 0..cols {
        let mut v = m.column(j).to_vec();
        let original = norm(&v);
        if original == 0.0 {
            return Err(Error::RankDeficient);
        }
        for _ in 0..2 {
            for k in 0..j {
                for c in [k, cols + k] {
                    let q = m.column(c);
                    let coef = dot(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= qi * coef;
                    }
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
        m.set_column(cols + j, &quaternion_j(&v));
        m.set_column(j, &v);
    }
    Ok(())
}

/// Make the first nonzero entry of each field column real and positive.
fn fix_phases(spec: &GrassmannianSpec, m: &mut CMatrix, cols: usize) {
    for j in 0..cols {
        let Some(lead) = m.column(j).iter().copied().find(|z| z.norm() > 1e-12) else {
            continue;
        };
        let phase = lead.conj() / lead.norm();
        for z in m.column_mut(j) {
            *z *= phase;
        }
        if spec.field == Field::Quaternion {
            let jv = quaternion_j(m.column(j));
            m.set_column(cols + j, &jv);
        }
    }
}

/// The `index`-th Haar-distributed subspace of the stream selected by `seed`.
pub(crate) fn haar_sample_indexed(spec: &GrassmannianSpec, seed: u64, index: u64) -> Subspace {
    let mut rng = sample_rng(seed, index);
    loop {
        let mut m = gaussian_frame(spec, spec.p(), &mut rng, |_, _| true);
        if orthonormalize_field(spec, &mut m, spec.p()).is_ok() {
            fix_phases(spec, &mut m, spec.p());
            return Subspace { spec: *spec, frame: m };
        }
    }
}

/// A Haar-distributed subspace, deterministic in `seed`.
pub fn haar_sample(spec: &GrassmannianSpec, seed: u64) -> Subspace {
    haar_sample_indexed(spec, seed, 0)
}

fn random_unitary(spec: &GrassmannianSpec, rng: &mut ChaCha8Rng, support: impl Fn(usize, usize) -> bool + Copy) -> CMatrix {
    loop {
        let mut m = gaussian_frame(spec, spec.n(), rng, support);
        if orthonormalize_field(spec, &mut m, spec.n()).is_ok() {
            return m;
        }
    }
}

/// A Haar-distributed element of the full unitary group `U(n, 𝕂)`.
pub fn haar_unitary(spec: &GrassmannianSpec, seed: u64) -> Unitary {
    let mut rng = sample_rng(seed, 0);
    Unitary {
        spec: *spec,
        matrix: random_unitary(spec, &mut rng, |_, _| true),
    }
}

pub(crate) fn l_sample_indexed(spec: &GrassmannianSpec, seed: u64, index: u64) -> Unitary {
    let p = spec.p();
    let mut rng = sample_rng(seed, index);
    let mut m = random_unitary(spec, &mut rng, |i, j| (i < p) == (j < p));
    match spec.field {
        Field::Real => {
            if m.det().re < 0.0 {
                for z in m.column_mut(p) {
                    *z = -*z;
                }
            }
        }
        Field::Complex => {
            let det = m.det();
            let phase = det.conj() / det.norm();
            for z in m.column_mut(p) {
                *z *= phase;
            }
        }
        // the compact symplectic group already lies in SU(2n)
        Field::Quaternion => {}
    }
    Unitary {
        spec: *spec,
        matrix: m,
    }
}

/// A Haar-distributed element of the stabilizer `L = S(U(p, 𝕂) × U(q, 𝕂))`
/// of the base point.
pub fn l_sample(spec: &GrassmannianSpec, seed: u64) -> Unitary {
    l_sample_indexed(spec, seed, 0)
}
