//! The cosine-λ transform at the base point, by quadrature and by Monte
//! Carlo, its normalized continuation to the poles, the partial cosine-Funk
//! transforms and the Funk evaluation.
//!
//! All integrals use the unit-mass invariant measure, so `C^λ 1 = η_0(λ)`.
//!
//! Two coordinate systems are used for `C^λ f(β)`:
//!
//! * angles `t_1 ≥ … ≥ t_p`, with the kernel `∏ cos(t_i)^{dλ}` and density
//!   `δ`, for `λ ≥ 0`;
//! * `u_i = cos²t_i`, with kernel `∏ u_i^{(d(λ+1)−2)/2}` and density `ν`, for
//!   everything else. The ordered simplex `u_1 ≤ … ≤ u_p` is mapped to the
//!   cube by `u_k = r_k r_{k+1} ⋯ r_p`, which turns the integrand into
//!   `∏ r_j^{s_j−1} H(r)` with `s_j = (dj/2)(λ+j)` and `H` smooth at
//!   `r = 0`. Past `s_j = 0` each such factor is continued by integrating by
//!   parts on `[0, 1/2]`, which only needs derivatives of `H`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::jet::{Jet, Scalar};
use crate::manifold::{cos_between, haar_sample_indexed, l_sample_indexed, GrassmannianSpec, Subspace};
use crate::profile::{One, Pinned, Profile};
use crate::quadrature::{richardson, rule, Accumulator, Node, QuadratureConfig};
use crate::specfun::{boundary_exponent, normalizer_gamma, pole_order_c};

/// Exponents below this are continued rather than integrated directly, so
/// every remaining endpoint singularity is at worst `r^{-3/4}`.
const DIRECT_EXPONENT: f64 = 0.25;

/// Shape data of one coordinate integral.
#[derive(Debug, Clone, Copy)]
struct Coords {
    rank: usize,
    d: u32,
    /// `d(q − p)`.
    gap: u32,
}

impl Coords {
    fn of(spec: &GrassmannianSpec) -> Self {
        Self {
            rank: spec.p(),
            d: spec.d(),
            gap: spec.d() * (spec.q() - spec.p()) as u32,
        }
    }

    /// The same space with `m` angles pinned at `π/2`.
    fn reduced(self, m: usize) -> Self {
        Self {
            rank: self.rank - m,
            ..self
        }
    }

    fn boundary(&self) -> f64 {
        (self.d as f64 - 2.0 + self.gap as f64) / 2.0
    }
}

/// One term of the per-variable functional: the `order`-th Taylor
/// coefficient of `H` in this variable at `r`, times `weight`.
#[derive(Debug, Clone, Copy)]
struct Item {
    r: f64,
    rc: f64,
    weight: f64,
    order: usize,
}

/// The functional `g ↦ ∫_0^1 r^{s−1} g(r) dr`, continued in `s`.
///
/// For small `s` the integral over `[0, a]`, `a = 1/2`, is integrated by
/// parts `N` times:
/// `Σ_{k<N} (−1)^k a^{s+k} g^{(k)}(a)/(s)_{k+1} + (−1)^N/(s)_N ∫_0^a r^{s+N−1} g^{(N)}`.
fn continued_items(s: f64, nodes: &[Node]) -> Result<Vec<Item>> {
    let power = |w: f64, r: f64, e: f64| (w.ln() + e * r.ln()).exp();
    if s >= DIRECT_EXPONENT {
        return Ok(nodes
            .iter()
            .map(|n| Item {
                r: n.x,
                rc: n.xc,
                weight: power(n.w, n.x, s - 1.0),
                order: 0,
            })
            .collect());
    }
    let steps = (DIRECT_EXPONENT - s).ceil() as usize;
    let a: f64 = 0.5;
    let mut items = Vec::with_capacity(2 * nodes.len() + steps);
    for n in nodes {
        let r = 1.0 - n.xc / 2.0;
        items.push(Item {
            r,
            rc: n.xc / 2.0,
            weight: power(n.w / 2.0, r, s - 1.0),
            order: 0,
        });
    }
    // (s)_{k+1} and k!
    let mut rising = 1.0;
    let mut fact = 1.0;
    for k in 0..steps {
        let sk = s + k as f64;
        if sk.abs() < 1e-12 {
            return Err(domain("evaluation point is a pole of the coordinate integral"));
        }
        rising *= sk;
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        items.push(Item {
            r: a,
            rc: a,
            weight: sign * a.powf(sk) * fact / rising,
            order: k,
        });
    }
    let fact_n = fact * steps as f64;
    let sign = if steps.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = sign * fact_n / rising;
    for n in nodes {
        let r = n.x / 2.0;
        items.push(Item {
            r,
            rc: 1.0 - r,
            weight: scale * power(n.w / 2.0, r, s + steps as f64 - 1.0),
            order: steps,
        });
    }
    Ok(items)
}

/// `H(r) = f(u) ∏(1−u_k)^b ∏_{i<j} (1 − r_i ⋯ r_{j−1})^d` with
/// `u_k = r_k ⋯ r_p`; complements are built from `rc` so they stay accurate
/// near `r = 1`.
fn smooth_part<S: Scalar>(r: &[S], rc: &[S], b: f64, d: u32, f: impl FnOnce(&[S]) -> Option<S>) -> Option<S> {
    let p = r.len();
    let mut u = r.to_vec();
    for k in (0..p.saturating_sub(1)).rev() {
        u[k] = u[k + 1].clone() * r[k].clone();
    }
    let mut h = f(&u)?;
    if b != 0.0 {
        let mut omp = rc[p - 1].clone();
        h = h * omp.pow_real(b);
        for k in (0..p - 1).rev() {
            omp = rc[k].clone() + r[k].clone() * omp;
            h = h * omp.pow_real(b);
        }
    }
    for j in 1..p {
        let mut wall = rc[j - 1].clone();
        h = h * wall.pow_int(d);
        for i in (0..j - 1).rev() {
            wall = rc[i].clone() + r[i].clone() * wall;
            h = h * wall.pow_int(d);
        }
    }
    Some(h)
}

fn no_jet() -> Error {
    Error::Unsupported("continuation past the first pole needs a profile with Taylor jets, e.g. a polynomial".to_string())
}

/// Combinations whose weight is below this fraction of the largest possible
/// weight are skipped; the smooth part is bounded well below its inverse.
const NEGLIGIBLE_WEIGHT: f64 = 1e-32;

/// Visit the tensor product of per-variable item lists, skipping
/// combinations with negligible total weight.
fn for_each_combination(axes: &[Vec<Item>], mut visit: impl FnMut(&[Item]) -> Result<()>) -> Result<()> {
    let p = axes.len();
    if axes.iter().any(|a| a.is_empty()) {
        return Ok(());
    }
    // tail[k] = ∏_{j ≥ k} max |weight_j|
    let mut tail = vec![1.0; p + 1];
    for k in (0..p).rev() {
        tail[k] = tail[k + 1] * axes[k].iter().fold(0.0, |m: f64, it| m.max(it.weight.abs()));
    }
    let cutoff = NEGLIGIBLE_WEIGHT * tail[0];
    let mut current: Vec<Item> = axes.iter().map(|a| a[0]).collect();
    descend(axes, &tail, cutoff, 0, 1.0, &mut current, &mut visit)
}

fn descend(
    axes: &[Vec<Item>],
    tail: &[f64],
    cutoff: f64,
    k: usize,
    partial: f64,
    current: &mut Vec<Item>,
    visit: &mut impl FnMut(&[Item]) -> Result<()>,
) -> Result<()> {
    if k == axes.len() {
        return visit(current);
    }
    for it in &axes[k] {
        let w = partial * it.weight.abs();
        if w * tail[k + 1] < cutoff {
            continue;
        }
        current[k] = *it;
        descend(axes, tail, cutoff, k + 1, w, current, visit)?;
    }
    Ok(())
}

/// One refinement level of the `u`-coordinate integral. Returns the value and
/// the sum of absolute contributions.
fn u_level(c: Coords, lam: f64, f: &dyn Profile, nodes: &[Node]) -> Result<(f64, f64)> {
    let p = c.rank;
    let df = c.d as f64;
    let axes: Vec<Vec<Item>> = (1..=p)
        .map(|j| continued_items(df * j as f64 / 2.0 * (lam + j as f64), nodes))
        .collect::<Result<_>>()?;
    let b = c.boundary();
    let mut acc = Accumulator::default();
    let mut r = vec![0.0; p];
    let mut rc = vec![0.0; p];
    for_each_combination(&axes, |items| {
        let weight: f64 = items.iter().map(|i| i.weight).product();
        if weight == 0.0 {
            return Ok(());
        }
        let h = if items.iter().all(|i| i.order == 0) {
            for (k, it) in items.iter().enumerate() {
                r[k] = it.r;
                rc[k] = it.rc;
            }
            smooth_part(&r, &rc, b, c.d, |u: &[f64]| Some(f.eval(u))).ok_or_else(no_jet)?
        } else {
            let shape: Vec<usize> = items.iter().map(|i| i.order + 1).collect();
            let rj: Vec<Jet> = items
                .iter()
                .enumerate()
                .map(|(k, it)| Jet::variable(&shape, k, it.r))
                .collect();
            let rcj: Vec<Jet> = items
                .iter()
                .enumerate()
                .map(|(k, it)| Jet::constant(&shape, it.rc) - Jet::variable(&shape, k, 0.0))
                .collect();
            let jet = smooth_part(&rj, &rcj, b, c.d, |u: &[Jet]| f.eval_jet(u)).ok_or_else(no_jet)?;
            let orders: Vec<usize> = items.iter().map(|i| i.order).collect();
            jet.coefficient(&orders)
        };
        acc.add(weight * h);
        Ok(())
    })?;
    Ok((acc.total(), acc.abs_total()))
}

/// One refinement level of the angle-coordinate integral (`λ ≥ 0`).
///
/// The chamber `π/2 ≥ t_1 ≥ … ≥ t_p ≥ 0` is parameterized by
/// `t_k = (π/2) w_1 ⋯ w_k`.
fn t_level(c: Coords, lam: f64, f: &dyn Profile, nodes: &[Node]) -> Result<(f64, f64)> {
    let p = c.rank;
    let d = c.d as i32;
    let df = c.d as f64;
    let sin_exp = (d - 1) as f64 + c.gap as f64;
    let item_axes: Vec<Vec<Item>> = (0..p)
        .map(|j| {
            nodes
                .iter()
                .map(|n| Item {
                    r: n.x,
                    rc: n.xc,
                    weight: n.w * n.x.powi((p - 1 - j) as i32),
                    order: 0,
                })
                .collect()
        })
        .collect();
    let jac = FRAC_PI_2.powi(p as i32);
    let mut acc = Accumulator::default();
    let mut t = vec![0.0; p];
    let mut cos_t = vec![0.0; p];
    let mut u = vec![0.0; p];
    for_each_combination(&item_axes, |items| {
        let weight: f64 = jac * items.iter().map(|i| i.weight).product::<f64>();
        if weight == 0.0 {
            return Ok(());
        }
        let mut prod = 1.0;
        for k in 0..p {
            prod *= items[k].r;
            t[k] = FRAC_PI_2 * prod;
            // 1 − w_1⋯w_k from the complements
            let mut omp = items[k].rc;
            for i in (0..k).rev() {
                omp = items[i].rc + items[i].r * omp;
            }
            cos_t[k] = (FRAC_PI_2 * omp).sin();
            u[k] = cos_t[k] * cos_t[k];
        }
        let mut g = f.eval(&u);
        for k in 0..p {
            let kernel = if lam == 0.0 { 1.0 } else { cos_t[k].powf(df * lam) };
            g *= kernel * (2.0 * cos_t[k]).powi(d - 1) * t[k].sin().powf(sin_exp);
        }
        for i in 0..p {
            for j in i + 1..p {
                // t_i − t_j = t_i (1 − w_{i+1}⋯w_j)
                let mut omp = items[j].rc;
                for l in (i + 1..j).rev() {
                    omp = items[l].rc + items[l].r * omp;
                }
                let diff = t[i] * omp;
                g *= ((diff).sin() * (t[i] + t[j]).sin()).powi(d);
            }
        }
        acc.add(weight * g);
        Ok(())
    })?;
    Ok((acc.total(), acc.abs_total()))
}

type Level = fn(Coords, f64, &dyn Profile, &[Node]) -> Result<(f64, f64)>;

/// Refine until two successive levels agree to `rel_tol`.
fn refine(level: Level, c: Coords, lam: f64, f: &dyn Profile, cfg: &QuadratureConfig, what: &'static str) -> Result<f64> {
    let mut prev: Option<f64> = None;
    let mut last_err = f64::INFINITY;
    let mut last = 0.0;
    for l in 0..=cfg.max_refinements {
        let nodes = rule(cfg.scheme, cfg.nodes_per_dim, l);
        let (value, abs) = level(c, lam, f, &nodes)?;
        if !value.is_finite() {
            return Err(Error::Convergence {
                what,
                estimate: value,
                error: f64::INFINITY,
                tolerance: cfg.rel_tol,
            });
        }
        if let Some(pv) = prev {
            last_err = (value - pv).abs();
            if last_err <= cfg.rel_tol * abs.max(value.abs()) {
                return Ok(value);
            }
        }
        prev = Some(value);
        last = value;
    }
    Err(Error::Convergence {
        what,
        estimate: last,
        error: last_err,
        tolerance: cfg.rel_tol,
    })
}

fn u_integral(c: Coords, lam: f64, f: &dyn Profile, cfg: &QuadratureConfig) -> Result<f64> {
    if c.rank == 0 {
        return Ok(f.eval(&[]));
    }
    refine(u_level, c, lam, f, cfg, "u-coordinate quadrature")
}

fn t_integral(c: Coords, lam: f64, f: &dyn Profile, cfg: &QuadratureConfig) -> Result<f64> {
    if c.rank == 0 {
        return Ok(f.eval(&[]));
    }
    refine(t_level, c, lam, f, cfg, "angle-coordinate quadrature")
}

/// `C^λ f(β)` in `u`-coordinates, normalized to unit mass. Valid wherever the
/// continuation is regular; used internally past the convergence region.
pub(crate) fn u_ratio(spec: &GrassmannianSpec, f: &dyn Profile, lam: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let c = Coords::of(spec);
    debug_assert_eq!(c.boundary(), boundary_exponent(spec));
    Ok(u_integral(c, lam, f, cfg)? / u_integral(c, 0.0, &One, cfg)?)
}

/// `C^λ f(β)` for an L-invariant `f` given by its profile, normalized so
/// that `f = 1` gives `η_0(λ)`. Requires `dλ > −1`.
pub fn cosine_quadrature(spec: &GrassmannianSpec, f: &dyn Profile, lam: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(spec.d() as f64 * lam > -1.0) {
        return Err(domain("cosine transform needs d*lambda > -1"));
    }
    let c = Coords::of(spec);
    if lam >= 0.0 {
        Ok(t_integral(c, lam, f, cfg)? / t_integral(c, 0.0, &One, cfg)?)
    } else {
        u_ratio(spec, f, lam, cfg)
    }
}

/// The meromorphic continuation of `λ ↦ C^λ f(β)` at a regular point.
/// Profiles need Taylor jets once `λ` is below the first pole.
pub fn cosine_continued(spec: &GrassmannianSpec, f: &dyn Profile, lam: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if pole_order_c(spec, lam) > 0 {
        return Err(domain("lambda is a pole of the cosine transform"));
    }
    u_ratio(spec, f, lam, cfg)
}

/// Result of a continuation limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationLimit {
    pub value: f64,
    /// Disagreement of the last two extrapolants.
    pub error: f64,
    /// `(ε, γ(λ_0+ε) C^{λ_0+ε} f(β))` along the ladder.
    pub ladder: Vec<(f64, f64)>,
}

/// The value at the pole `lam0 ∈ {−1, …, −p}` of the continuation of
/// `γ(λ) C^λ f(β)`, by extrapolation along `λ = lam0 + ε`.
pub fn ac_gamma_c(spec: &GrassmannianSpec, f: &dyn Profile, lam0: f64, cfg: &QuadratureConfig) -> Result<ContinuationLimit> {
    cfg.validate()?;
    if cfg.extrapolation_epsilons.len() < 2 {
        return Err(Error::InvalidConfig("need at least two extrapolation offsets".to_string()));
    }
    if lam0.fract() != 0.0 || lam0 > -1.0 || lam0 < -(spec.p() as f64) {
        return Err(domain("continuation limits are taken at lambda in {-1, ..., -p}"));
    }
    if lam0 < -1.0 && spec.d() != 1 {
        return Err(Error::Unsupported("poles below -1 are only treated over the reals".to_string()));
    }
    if pole_order_c(spec, lam0) == 0 {
        return Err(domain("lambda is a regular point of the cosine transform"));
    }
    let c = Coords::of(spec);
    let norm = u_integral(c, 0.0, &One, cfg)?;
    let mut ladder = Vec::with_capacity(cfg.extrapolation_epsilons.len());
    for &eps in &cfg.extrapolation_epsilons {
        let lam = lam0 + eps;
        let g = normalizer_gamma(spec, lam) * u_integral(c, lam, f, cfg)? / norm;
        ladder.push((eps, g));
    }
    let xs: Vec<f64> = ladder.iter().map(|x| x.0).collect();
    let ys: Vec<f64> = ladder.iter().map(|x| x.1).collect();
    let (value, error) = richardson(&xs, &ys);
    let scale = ys.iter().fold(value.abs(), |m, y| m.max(y.abs()));
    if !(error <= cfg.extrapolation_tol * scale) {
        return Err(Error::Convergence {
            what: "continuation extrapolation",
            estimate: value,
            error,
            tolerance: cfg.extrapolation_tol,
        });
    }
    Ok(ContinuationLimit { value, error, ladder })
}

/// The partial cosine-Funk transform `F_m f(β)`: the `t_1 = … = t_m = π/2`
/// slice of `f` integrated against `∏_{i>m} cos(t_i)^{dm} δ_m`, normalized
/// so that `F_m 1 = 1`. For `m = p` it is the Funk evaluation.
pub fn partial_funk(spec: &GrassmannianSpec, f: &dyn Profile, m: usize, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if m == 0 || m > spec.p() {
        return Err(domain("pin count must satisfy 1 <= m <= p"));
    }
    if m >= 2 && spec.d() != 1 {
        return Err(domain("partial Funk transforms with m >= 2 are defined over the reals only"));
    }
    if m == spec.p() {
        return Ok(funk_evaluate(spec, f));
    }
    let c = Coords::of(spec).reduced(m);
    let pinned = Pinned { inner: f, pinned: m };
    let lam = m as f64;
    Ok(t_integral(c, lam, &pinned, cfg)? / t_integral(c, lam, &One, cfg)?)
}

/// The Funk evaluation `f(π/2, …, π/2)`.
pub fn funk_evaluate(spec: &GrassmannianSpec, f: &dyn Profile) -> f64 {
    f.eval(&vec![0.0; spec.p()])
}

/// Welford running mean and variance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan's parallel combination; `self` comes first in the ordering.
    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / n as f64;
        self.count = n;
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }

    pub fn estimate(&self) -> McEstimate {
        McEstimate {
            estimate: self.mean,
            stderr: self.stderr(),
            samples: self.count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Samples per reduction chunk. Statistics are merged chunk by chunk in
/// index order, so any partition of the chunks over workers reproduces the
/// serial result bit for bit.
pub const MC_CHUNK: u64 = 4096;

/// Statistics of `outputs` observables over Haar samples `start..start+len`
/// of the stream `seed`. `g` writes the observables of one sample.
pub fn montecarlo_chunk<G: Fn(&Subspace, &mut [f64])>(
    spec: &GrassmannianSpec,
    seed: u64,
    start: u64,
    len: u64,
    outputs: usize,
    g: G,
) -> Vec<RunningStats> {
    let mut stats = vec![RunningStats::default(); outputs];
    let mut buf = vec![0.0; outputs];
    for i in start..start + len {
        let x = haar_sample_indexed(spec, seed, i);
        g(&x, &mut buf);
        for (s, v) in stats.iter_mut().zip(&buf) {
            s.push(*v);
        }
    }
    stats
}

/// Chunk boundaries `(start, len)` covering `0..n`.
pub fn chunks(n: u64) -> Vec<(u64, u64)> {
    (0..n.div_ceil(MC_CHUNK))
        .map(|c| (c * MC_CHUNK, MC_CHUNK.min(n - c * MC_CHUNK)))
        .collect()
}

/// Merge per-chunk statistics in chunk order.
pub fn merge_chunks(parts: &[Vec<RunningStats>], outputs: usize) -> Vec<RunningStats> {
    let mut total = vec![RunningStats::default(); outputs];
    for part in parts {
        for (t, s) in total.iter_mut().zip(part) {
            t.merge(s);
        }
    }
    total
}

/// Statistics of `outputs` observables over `n` Haar samples.
pub fn montecarlo_stats<G: Fn(&Subspace, &mut [f64])>(
    spec: &GrassmannianSpec,
    seed: u64,
    n: u64,
    outputs: usize,
    g: G,
) -> Vec<RunningStats> {
    let parts: Vec<Vec<RunningStats>> = chunks(n)
        .into_iter()
        .map(|(start, len)| montecarlo_chunk(spec, seed, start, len, outputs, &g))
        .collect();
    merge_chunks(&parts, outputs)
}

/// The kernel `|Cos(x, ω)|^{dλ}`.
pub fn cosine_kernel(spec: &GrassmannianSpec, x: &Subspace, omega: &Subspace, lam: f64) -> Result<f64> {
    let c = cos_between(x, omega)?;
    Ok(if lam == 0.0 { 1.0 } else { c.powf(spec.d() as f64 * lam) })
}

/// `C^λ f(ω)` by Monte Carlo over `n` Haar samples.
pub fn cosine_montecarlo(
    spec: &GrassmannianSpec,
    f: impl Fn(&Subspace) -> f64,
    lam: f64,
    omega: &Subspace,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    if !(spec.d() as f64 * lam > -1.0) {
        return Err(domain("cosine transform needs d*lambda > -1"));
    }
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one sample".to_string()));
    }
    if omega.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    let stats = montecarlo_stats(spec, seed, n, 1, |x, out| {
        out[0] = cosine_kernel(spec, x, omega, lam).unwrap_or(f64::NAN) * f(x);
    });
    Ok(stats[0].estimate())
}

/// The L-invariant function with profile `f`, evaluated on a subspace.
pub fn profile_on_subspace(f: &dyn Profile, x: &Subspace) -> f64 {
    f.eval(&x.cos_squares_to_base())
}

/// The Funk transform at `β` of a general function, `∫_L f(lσ) dl` for a
/// fixed `σ ⊂ β^⊥`, by Monte Carlo over `n` samples of `L`.
pub fn funk_evaluate_subspace(
    spec: &GrassmannianSpec,
    f: impl Fn(&Subspace) -> f64,
    sigma: &Subspace,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    if sigma.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one sample".to_string()));
    }
    if sigma.cos_squares_to_base().iter().any(|&u| u > 1e-20) {
        return Err(domain("sigma must be orthogonal to the base point"));
    }
    let mut stats = RunningStats::default();
    for i in 0..n {
        let l = l_sample_indexed(spec, seed, i);
        stats.push(f(&l.apply(sigma)));
    }
    Ok(stats.estimate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{base_point, exp_coords, Field};
    use crate::profile::Polynomial;
    use crate::spectrum::{eta, HighestWeight};

    fn spec(p: usize, q: usize, field: Field) -> GrassmannianSpec {
        GrassmannianSpec::new(p, q, field).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn continued_items_reproduce_beta_function() {
        // ∫_0^1 r^{s-1} (1-r) dr = 1/s - 1/(s+1), continued to s < 0
        let nodes = rule(crate::quadrature::Scheme::TanhSinh, 65, 3);
        for s in [0.7, 0.1, -0.4, -1.3] {
            let items = continued_items(s, &nodes).unwrap();
            let mut acc = Accumulator::default();
            for it in &items {
                let coef = match it.order {
                    0 => it.rc,
                    1 => -1.0,
                    _ => 0.0,
                };
                acc.add(it.weight * coef);
            }
            let want = 1.0 / s - 1.0 / (s + 1.0);
            assert!(rel(acc.total(), want) < 1e-12, "s = {s}: {} vs {want}", acc.total());
        }
    }

    #[test]
    fn unit_profile_reproduces_eta_zero() {
        let cfg = QuadratureConfig::default();
        for s in [spec(1, 2, Field::Real), spec(2, 2, Field::Real), spec(1, 2, Field::Quaternion)] {
            for lam in [0.0, 0.5, 1.0, 2.0] {
                let got = cosine_quadrature(&s, &One, lam, &cfg).unwrap();
                let want = eta(&s, &HighestWeight::zero(s.p()), lam).value;
                assert!(rel(got, want) < 1e-9, "{s} λ={lam}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn both_coordinate_systems_agree() {
        let cfg = QuadratureConfig::default();
        let s = spec(2, 3, Field::Real);
        let f = Polynomial::variable(2, 0).add(&Polynomial::variable(2, 1).pow(2));
        for lam in [0.25, 1.5] {
            let c = Coords::of(&s);
            let a = t_integral(c, lam, &f, &cfg).unwrap() / t_integral(c, 0.0, &One, &cfg).unwrap();
            let b = u_ratio(&s, &f, lam, &cfg).unwrap();
            assert!(rel(a, b) < 1e-9, "λ={lam}: {a} vs {b}");
        }
    }

    #[test]
    fn domain_errors() {
        let cfg = QuadratureConfig::default();
        let s = spec(1, 2, Field::Complex);
        assert!(matches!(cosine_quadrature(&s, &One, -0.5, &cfg), Err(Error::Domain(_))));
        assert!(matches!(ac_gamma_c(&s, &One, -0.5, &cfg), Err(Error::Domain(_))));
        let r = spec(2, 3, Field::Complex);
        assert!(matches!(ac_gamma_c(&r, &One, -2.0, &cfg), Err(Error::Unsupported(_))));
        assert!(matches!(partial_funk(&r, &One, 2, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn partial_funk_normalization_and_pinning() {
        let cfg = QuadratureConfig::default();
        let s = spec(2, 2, Field::Real);
        assert!(rel(partial_funk(&s, &One, 1, &cfg).unwrap(), 1.0) < 1e-12);
        // depends on t_1 only: c1 + 2 → value at u_1 = 0
        let f = Polynomial::variable(2, 0).add(&Polynomial::constant(2, 2.0));
        assert!(rel(partial_funk(&s, &f, 1, &cfg).unwrap(), 2.0) < 1e-12);
        assert_eq!(partial_funk(&s, &f, 2, &cfg).unwrap(), funk_evaluate(&s, &f));
    }

    #[test]
    fn funk_evaluation_of_product_of_cosines() {
        let s = spec(2, 3, Field::Real);
        let f = Polynomial::variable(2, 0).mul(&Polynomial::variable(2, 1));
        assert_eq!(funk_evaluate(&s, &f), 0.0);
        assert_eq!(funk_evaluate(&s, &One), 1.0);
    }

    #[test]
    fn montecarlo_trivial_cases() {
        let s = spec(2, 2, Field::Real);
        let b = base_point(&s);
        let est = cosine_montecarlo(&s, |_| 1.0, 0.0, &b, 100, 3).unwrap();
        assert_eq!((est.estimate, est.stderr), (1.0, 0.0));
    }

    #[test]
    fn chunked_statistics_match_serial_welford() {
        let s = spec(1, 2, Field::Real);
        let n = MC_CHUNK * 2 + 17;
        let merged = montecarlo_stats(&s, 9, n, 1, |x, out| out[0] = x.cos_squares_to_base()[0]);
        let mut serial = RunningStats::default();
        for i in 0..n {
            serial.push(haar_sample_indexed(&s, 9, i).cos_squares_to_base()[0]);
        }
        assert_eq!(merged[0].count, serial.count);
        assert!((merged[0].mean - serial.mean).abs() < 1e-15);
        assert!(rel(merged[0].m2, serial.m2) < 1e-12);
    }

    #[test]
    fn first_pole_of_unit_profile_matches_spectrum() {
        let cfg = QuadratureConfig::default();
        let s = spec(2, 2, Field::Real);
        let lim = ac_gamma_c(&s, &One, -1.0, &cfg).unwrap();
        let want = crate::spectrum::gamma_eta(&s, &HighestWeight::zero(2), -1.0).finite_value().unwrap();
        assert!(rel(lim.value, want) < 1e-6, "{} vs {want}", lim.value);
    }

    #[test]
    fn subspace_funk_rejects_non_orthogonal_sigma() {
        let s = spec(1, 2, Field::Real);
        let sigma = exp_coords(&s, &[1.0]);
        assert!(funk_evaluate_subspace(&s, |_| 1.0, &sigma, 10, 1).is_err());
    }
}
