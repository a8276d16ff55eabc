use gct_core::spectrum::{enumerate_weights, eta, eta_ratio_ac, f1_image_member, gamma_eta, HighestWeight};
use gct_core::{Field, GrassmannianSpec};
use proptest::prelude::*;

fn spec(p: usize, q: usize, field: Field) -> GrassmannianSpec {
    GrassmannianSpec::new(p, q, field).unwrap()
}

fn rank_two() -> [GrassmannianSpec; 3] {
    [spec(2, 2, Field::Real), spec(2, 3, Field::Real), spec(2, 3, Field::Complex)]
}

#[test]
fn classifier_agrees_with_continued_ratio() {
    for s in rank_two() {
        for mu in enumerate_weights(&s, 8) {
            let v = eta_ratio_ac(&s, &mu, -1.0).finite_value().unwrap();
            assert_eq!(f1_image_member(&mu), v.abs() > 1e-8, "{s} {mu}: {v}");
        }
    }
}

#[test]
fn normalized_spectrum_is_finite_at_first_pole() {
    for s in rank_two() {
        for mu in enumerate_weights(&s, 8) {
            assert!(gamma_eta(&s, &mu, -1.0).pole_order <= 0, "{s} {mu}");
        }
    }
}

#[test]
fn negative_last_entry_is_killed_at_first_pole() {
    let s = spec(2, 2, Field::Real);
    let mu = HighestWeight::new(vec![2, -2]);
    assert!(mu.is_valid_for(&s));
    assert_eq!(eta_ratio_ac(&s, &mu, -1.0).finite_value(), Some(0.0));
}

/// Sign of `Γ(x + k)/Γ(x)` for `k ≥ 0`, counted term by term; zero when a
/// term vanishes.
fn rising_sign(x: f64, k: i64) -> f64 {
    (0..k)
        .map(|i| {
            let t = x + i as f64;
            if t == 0.0 {
                0.0
            } else {
                t.signum()
            }
        })
        .product()
}

#[test]
fn sign_at_one_is_alternation_times_gamma_cofactor() {
    let specs = [
        spec(1, 2, Field::Real),
        spec(1, 4, Field::Complex),
        spec(2, 3, Field::Real),
        spec(2, 3, Field::Complex),
        spec(3, 3, Field::Quaternion),
    ];
    for s in &specs {
        let d = s.d() as f64;
        let n = s.n() as f64;
        for mu in enumerate_weights(s, 8) {
            if mu.m.iter().any(|&x| x < 0) {
                continue;
            }
            let mut cofactor = 1.0;
            for (j, &m) in mu.m.iter().enumerate() {
                let shift = d * j as f64 / 2.0;
                cofactor *= rising_sign(-d / 2.0 - shift, m / 2);
                cofactor *= rising_sign(d * (1.0 + n) / 2.0 - shift, m / 2);
            }
            let alternation = if (mu.size() / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let value = eta(s, &mu, 1.0).finite_value().unwrap();
            let sign = if value == 0.0 { 0.0 } else { value.signum() };
            assert_eq!(sign, alternation * cofactor, "{s} {mu}");
        }
    }
}

proptest! {
    #[test]
    fn ratio_route_matches_direct_eigenvalue(
        which in 0usize..4,
        lam in 0.05f64..4.0,
        pick in any::<prop::sample::Index>(),
    ) {
        let s = [spec(1, 2, Field::Real), spec(2, 3, Field::Real), spec(2, 3, Field::Complex), spec(2, 2, Field::Quaternion)][which];
        let weights = enumerate_weights(&s, 8);
        let mu = &weights[pick.index(weights.len())];
        let direct = eta(&s, mu, lam).finite_value().unwrap();
        let ratio = eta_ratio_ac(&s, mu, lam).finite_value().unwrap();
        let trivial = eta(&s, &HighestWeight::zero(s.p()), lam).finite_value().unwrap();
        prop_assert!((direct - ratio * trivial).abs() <= 1e-11 * direct.abs().max(1e-300));
    }
}
