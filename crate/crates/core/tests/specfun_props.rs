use std::f64::consts::{FRAC_PI_2, PI};

use gct_core::specfun::{density_delta, density_nu, gamma_pd, gamma_pd_scalar, normalizer_gamma, pole_order_c};
use gct_core::{Field, GrassmannianSpec};
use proptest::prelude::*;

fn spec(p: usize, q: usize, field: Field) -> GrassmannianSpec {
    GrassmannianSpec::new(p, q, field).unwrap()
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
fn gauss(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            (a + (b - a) * (z + 1.0) / 2.0, w * (b - a) / 2.0)
        })
        .collect()
}

/// `∫_{D⁺} δ_0`, with `t_2 = t_1 w` on the rank-2 simplex.
fn angle_side(s: &GrassmannianSpec) -> f64 {
    let rule = gauss(80, 0.0, FRAC_PI_2);
    match s.p() {
        1 => rule.iter().map(|&(t, w)| w * density_delta(s, 0, &[t])).sum(),
        2 => {
            let unit = gauss(80, 0.0, 1.0);
            let mut acc = 0.0;
            for &(t1, w1) in &rule {
                for &(v, wv) in &unit {
                    acc += w1 * wv * t1 * density_delta(s, 0, &[t1, t1 * v]);
                }
            }
            acc
        }
        _ => unreachable!(),
    }
}

/// `∫ ∏u_i^{(d−2)/2} ν_0^p(u)` over `0 ≤ u_p ≤ … ≤ u_1 ≤ 1`, with
/// `u_1 = sin²θ` and `u_2 = u_1 sin²φ` so the integrand is smooth.
fn cosine_square_side(s: &GrassmannianSpec) -> f64 {
    let e = (s.d() as f64 - 2.0) / 2.0;
    let rule = gauss(80, 0.0, FRAC_PI_2);
    let jac = |a: f64| 2.0 * a.sin() * a.cos();
    match s.p() {
        1 => rule
            .iter()
            .map(|&(th, w)| {
                let u = th.sin().powi(2);
                w * jac(th) * u.powf(e) * density_nu(s, 0, 1, &[u]).unwrap()
            })
            .sum(),
        2 => {
            let mut acc = 0.0;
            for &(th, w1) in &rule {
                let u1 = th.sin().powi(2);
                for &(ph, w2) in &rule {
                    let v = ph.sin().powi(2);
                    let u2 = u1 * v;
                    let f = (u1 * u2).powf(e) * density_nu(s, 0, 2, &[u1, u2]).unwrap();
                    acc += w1 * w2 * jac(th) * jac(ph) * u1 * f;
                }
            }
            acc
        }
        _ => unreachable!(),
    }
}

#[test]
fn change_of_variables_between_angle_and_cosine_square_coordinates() {
    let specs = [
        spec(1, 1, Field::Real),
        spec(1, 2, Field::Real),
        spec(1, 2, Field::Complex),
        spec(1, 3, Field::Quaternion),
        spec(2, 3, Field::Real),
        spec(2, 5, Field::Real),
        spec(2, 3, Field::Complex),
        spec(2, 4, Field::Complex),
        spec(2, 2, Field::Quaternion),
    ];
    for s in &specs {
        let lhs = angle_side(s);
        let jacobian = 2f64.powi(s.p() as i32 * (s.d() as i32 - 2));
        let rhs = jacobian * cosine_square_side(s);
        assert!((lhs - rhs).abs() / rhs.abs() < 1e-8, "{s}: {lhs} vs {rhs}");
    }
}

#[test]
fn densities_vanish_on_walls() {
    let s = spec(2, 3, Field::Real);
    assert_eq!(density_delta(&s, 0, &[0.7, 0.7]), 0.0);
    assert_eq!(density_nu(&s, 0, 2, &[0.3, 0.3]).unwrap(), 0.0);
}

#[test]
fn pole_orders_match_gamma_pole_counts() {
    for p in 1..=3 {
        for field in [Field::Real, Field::Complex, Field::Quaternion] {
            let s = spec(p, p + 1, field);
            let d = s.d() as f64;
            for k in 2..=2 * p {
                let lam0 = -(k as f64) / 2.0;
                let g = gamma_pd_scalar(p, s.d(), d * (lam0 + p as f64) / 2.0);
                assert_eq!(pole_order_c(&s, lam0) as i32, g.pole_order.max(0), "{s} at {lam0}");
            }
        }
    }
}

#[test]
fn normalizer_vanishes_exactly_at_poles() {
    let s = spec(2, 3, Field::Real);
    for lam0 in [-1.0, -2.0, -3.0] {
        assert_eq!(normalizer_gamma(&s, lam0), 0.0);
        assert!(normalizer_gamma(&s, lam0 + 0.1) != 0.0);
    }
}

#[test]
fn scalar_gamma_values() {
    assert!((gamma_pd_scalar(1, 1, 5.0).value - 24.0).abs() < 1e-12);
    // Γ_{2,1}(2) = Γ(2) Γ(3/2)
    assert!((gamma_pd_scalar(2, 1, 2.0).value - PI.sqrt() / 2.0).abs() < 1e-14);
}

proptest! {
    #[test]
    fn gamma_recurrence_holds_factorwise(
        d in prop::sample::select(vec![1u32, 2, 4]),
        base in prop::collection::vec(0.05f64..6.0, 1..4),
        j_pick in any::<prop::sample::Index>(),
    ) {
        let p = base.len();
        // keep every factor argument positive
        let lam: Vec<f64> = base.iter().enumerate().map(|(j, x)| x + d as f64 * j as f64 / 2.0).collect();
        let j = j_pick.index(p);
        let mut bumped = lam.clone();
        bumped[j] += 1.0;
        let a = gamma_pd(p, d, &lam);
        let b = gamma_pd(p, d, &bumped);
        prop_assert_eq!(a.pole_order, 0);
        let want = lam[j] - d as f64 * j as f64 / 2.0;
        let got = b.value / a.value;
        prop_assert!((got - want).abs() / want < 1e-12, "{got} vs {want}");
    }
}
