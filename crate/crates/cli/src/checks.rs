//! Self-check suites. Each check reports a residual against a tolerance and
//! passes when `residual <= tolerance`.

use std::f64::consts::FRAC_PI_2;

use anyhow::Result;
use gct_core::manifold::{base_point, cos_between, exp_coords};
use gct_core::profile::{One, Polynomial, Profile};
use gct_core::specfun::pole_order_c;
use gct_core::spectrum::{enumerate_weights, eta, eta_ratio_ac, f1_image_member, gamma_eta, HighestWeight};
use gct_core::transform::{
    ac_gamma_c, cosine_kernel, cosine_quadrature, funk_evaluate, partial_funk, profile_on_subspace,
};
use gct_core::zonal::{build_zonal_basis, eigenvalue_numeric};
use gct_core::{Field, GrassmannianSpec, QuadratureConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::{settings, CheckArgs, Suite};
use crate::core_error;
use crate::expr::parse_profile;
use crate::parallel::montecarlo;
use crate::report::Report;

fn spec(p: usize, q: usize, field: Field) -> GrassmannianSpec {
    GrassmannianSpec::new(p, q, field).expect("suite spaces are valid")
}

fn poly(src: &str, vars: usize) -> Polynomial {
    parse_profile(src, vars).expect("suite profiles parse")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct SuiteRun {
    report: Report,
    name: &'static str,
}

impl SuiteRun {
    fn record(&mut self, check: String, residual: f64, tolerance: f64) {
        let ok = residual <= tolerance;
        self.report.passed &= ok;
        self.report
            .push(vec![self.name.into(), check.into(), residual.into(), tolerance.into(), ok.into()]);
    }
}

pub fn check(args: &CheckArgs) -> Result<Report> {
    let cfg = QuadratureConfig::default();
    let name = match args.suite {
        Suite::ProductLaw => "lemma58",
        Suite::Spectrum => "spectrum",
        Suite::Normalization => "normalization",
        Suite::Pole1 => "pole1",
        Suite::HigherPoles => "higher_poles",
        Suite::ImageKernel => "image_kernel",
        Suite::Haar => "haar",
    };
    let config = json!({ "command": "check", "args": args, "quadrature": settings(&cfg) });
    let mut run = SuiteRun {
        report: Report::new(config, &["suite", "check", "residual", "tolerance", "passed"]),
        name,
    };
    match args.suite {
        Suite::ProductLaw => product_law(&mut run, args.seed),
        Suite::Spectrum => spectrum(&mut run, &cfg)?,
        Suite::Normalization => normalization(&mut run, &cfg)?,
        Suite::Pole1 => pole1(&mut run, &cfg)?,
        Suite::HigherPoles => higher_poles(&mut run, &cfg)?,
        Suite::ImageKernel => image_kernel(&mut run),
        Suite::Haar => haar(&mut run, args.seed, args.samples, &cfg)?,
    }
    Ok(run.report)
}

/// `|Cos(σ(t), β)| = ∏ cos t_j` on random points of the chamber.
fn product_law(run: &mut SuiteRun, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces = [
        spec(2, 2, Field::Real),
        spec(2, 3, Field::Real),
        spec(2, 3, Field::Complex),
        spec(1, 2, Field::Quaternion),
        spec(2, 3, Field::Quaternion),
        spec(3, 3, Field::Real),
    ];
    for s in spaces {
        let beta = base_point(&s);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let mut t: Vec<f64> = (0..s.p()).map(|_| rng.random::<f64>() * FRAC_PI_2).collect();
            t.sort_by(|a, b| b.total_cmp(a));
            let want: f64 = t.iter().map(|x| x.cos()).product();
            let got = cos_between(&exp_coords(&s, &t), &beta).expect("same space");
            worst = worst.max((got - want).abs());
        }
        run.record(format!("product law on {s}"), worst, 1e-9);
    }
}

/// The quadrature of `1` reproduces `η_0`, and the ratio route reproduces
/// every `η_μ`.
fn spectrum(run: &mut SuiteRun, cfg: &QuadratureConfig) -> Result<()> {
    let spaces = [
        spec(1, 2, Field::Real),
        spec(2, 2, Field::Real),
        spec(2, 3, Field::Real),
        spec(1, 2, Field::Complex),
        spec(2, 3, Field::Complex),
        spec(1, 2, Field::Quaternion),
    ];
    for s in &spaces {
        let zero = HighestWeight::zero(s.p());
        let mut worst: f64 = 0.0;
        for lam in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let got = cosine_quadrature(s, &One, lam, cfg).map_err(core_error)?;
            let want = eta(s, &zero, lam).finite_value().expect("regular for lambda >= 0");
            worst = worst.max(rel(got, want));
        }
        run.record(format!("quadrature of one vs eta_0 on {s}"), worst, 1e-8);
    }
    for s in &spaces {
        let zero = HighestWeight::zero(s.p());
        let mut worst: f64 = 0.0;
        for mu in enumerate_weights(s, 8) {
            for lam in [0.5, 1.5, 2.5] {
                let direct = eta(s, &mu, lam).finite_value().expect("regular");
                let trivial = eta(s, &zero, lam).finite_value().expect("regular");
                let ratio = eta_ratio_ac(s, &mu, lam).finite_value().expect("regular");
                if direct != 0.0 {
                    worst = worst.max(rel(ratio * trivial, direct));
                }
            }
        }
        run.record(format!("eta ratio route on {s}"), worst, 1e-11);
    }
    Ok(())
}

/// Every normalization that should give exactly one does.
fn normalization(run: &mut SuiteRun, cfg: &QuadratureConfig) -> Result<()> {
    for s in [spec(2, 3, Field::Real), spec(2, 3, Field::Complex), spec(1, 3, Field::Quaternion)] {
        let v = cosine_quadrature(&s, &One, 0.0, cfg).map_err(core_error)?;
        run.record(format!("mean of one on {s}"), (v - 1.0).abs(), 1e-12);
        let pf = partial_funk(&s, &One, 1, cfg).map_err(core_error)?;
        run.record(format!("partial Funk of one on {s}"), (pf - 1.0).abs(), 1e-12);
        run.record(format!("Funk evaluation of one on {s}"), (funk_evaluate(&s, &One) - 1.0).abs(), 0.0);
    }
    for s in [spec(1, 2, Field::Real), spec(2, 3, Field::Real)] {
        let basis = build_zonal_basis(&s, 4, cfg).map_err(core_error)?;
        let zero = HighestWeight::zero(s.p());
        let v = eigenvalue_numeric(&s, &basis, &zero, 0.0, cfg).map_err(core_error)?;
        run.record(format!("trivial zonal eigenvalue at zero on {s}"), (v - 1.0).abs(), 1e-10);
    }
    for s in [spec(2, 2, Field::Real), spec(2, 3, Field::Complex)] {
        let lim = ac_gamma_c(&s, &One, -1.0, cfg).map_err(core_error)?;
        let want = gamma_eta(&s, &HighestWeight::zero(2), -1.0).finite_value().expect("finite");
        run.record(format!("continued one at -1 vs gamma eta_0 on {s}"), rel(lim.value, want), 1e-6);
    }
    Ok(())
}

/// At `λ = −1` the normalized continuation is the partial Funk transform.
fn pole1(run: &mut SuiteRun, cfg: &QuadratureConfig) -> Result<()> {
    let profiles = ["c2", "1 + c1 + c2^2", "3*c2^3 - c2 + c1*c2 + 1/2"];
    for s in [spec(2, 2, Field::Real), spec(2, 3, Field::Complex)] {
        let unit = ac_gamma_c(&s, &One, -1.0, cfg).map_err(core_error)?.value;
        for src in profiles {
            let f = poly(src, 2);
            let lim = ac_gamma_c(&s, &f, -1.0, cfg).map_err(core_error)?.value;
            let want = partial_funk(&s, &f, 1, cfg).map_err(core_error)?;
            run.record(format!("first pole, f = {src} on {s}"), rel(lim / unit, want), 1e-3);
        }
    }
    Ok(())
}

/// Below the first pole: the Funk endpoint and the pole-order table.
fn higher_poles(run: &mut SuiteRun, cfg: &QuadratureConfig) -> Result<()> {
    let s = spec(2, 3, Field::Real);
    let f = poly("1 + c1 + c2", 2);
    let g = poly("2 + c1*c2 + c2^2", 2);
    let lf = ac_gamma_c(&s, &f, -2.0, cfg).map_err(core_error)?.value;
    let lg = ac_gamma_c(&s, &g, -2.0, cfg).map_err(core_error)?.value;
    let want = f.eval(&[0.0, 0.0]) / g.eval(&[0.0, 0.0]);
    run.record(format!("Funk endpoint ratio on {s}"), rel(lf / lg, want), 1e-3);
    let unit = ac_gamma_c(&s, &One, -2.0, cfg).map_err(core_error)?.value;
    let want = gamma_eta(&s, &HighestWeight::zero(2), -2.0).finite_value().expect("finite");
    run.record(format!("continued one at -2 vs gamma eta_0 on {s}"), rel(unit, want), 1e-6);

    let mut mismatches = 0usize;
    let mut expect = |s: GrassmannianSpec, lam: f64, want: Option<u32>, pole: bool| {
        let got = pole_order_c(&s, lam);
        let ok = match want {
            Some(w) => got == w,
            None => (got > 0) == pole,
        };
        mismatches += usize::from(!ok);
    };
    for p in 2..=4 {
        for q in p..=p + 2 {
            for field in [Field::Real, Field::Complex] {
                for i in 1..=8 {
                    expect(spec(p, q, field), -(i as f64), None, true);
                }
            }
            for i in 1..=p {
                expect(spec(p, q, Field::Real), -(i as f64), Some(i.div_ceil(2) as u32), true);
            }
        }
    }
    for q in 1..=5 {
        for i in 1..=8 {
            expect(spec(1, q, Field::Real), -(i as f64), None, i % 2 == 1);
        }
    }
    for (p, q) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 4)] {
        for k in 2..=12 {
            expect(spec(p, q, Field::Quaternion), -(k as f64) / 2.0, None, true);
        }
        expect(spec(p, q, Field::Quaternion), -0.5, None, false);
        expect(spec(p, q, Field::Quaternion), -1.25, None, false);
    }
    run.record("pole-order table mismatches".into(), mismatches as f64, 0.0);
    Ok(())
}

/// `eta_ratio_ac(μ, −1)` vanishes exactly off the image of the first
/// partial Funk transform.
fn image_kernel(run: &mut SuiteRun) {
    for s in [spec(2, 2, Field::Real), spec(2, 3, Field::Real), spec(2, 3, Field::Complex)] {
        let weights = enumerate_weights(&s, 8);
        let mismatches = weights
            .iter()
            .filter(|mu| {
                let v = eta_ratio_ac(&s, mu, -1.0).finite_value().expect("finite ratio");
                (v.abs() > 1e-8) != f1_image_member(mu)
            })
            .count();
        run.record(format!("classifier mismatches over {} weights on {s}", weights.len()), mismatches as f64, 0.0);
    }
}

/// Sample means against exact values, in units of the standard error.
fn haar(run: &mut SuiteRun, seed: u64, samples: u64, cfg: &QuadratureConfig) -> Result<()> {
    let cases: [(GrassmannianSpec, &str, f64); 3] = [
        (spec(1, 2, Field::Real), "one", 2.0),
        (spec(2, 2, Field::Real), "one", 2.0),
        (spec(2, 3, Field::Complex), "c1 + c2", 0.0),
    ];
    for (s, src, lam) in cases {
        let f = poly(src, s.p());
        let want = cosine_quadrature(&s, &f, lam, cfg).map_err(core_error)?;
        let beta = base_point(&s);
        let stats = montecarlo(&s, seed, samples, 1, |x, out| {
            out[0] = cosine_kernel(&s, x, &beta, lam).unwrap_or(f64::NAN) * profile_on_subspace(&f, x);
        });
        let e = stats[0].estimate();
        run.record(
            format!("C^{lam} f, f = {src}, on {s}: {} +- {}", e.estimate, e.stderr),
            (e.estimate - want).abs() / e.stderr,
            4.0,
        );
    }
    Ok(())
}
