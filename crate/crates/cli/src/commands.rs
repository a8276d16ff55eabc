//! The `spectrum`, `transform` and `limit` commands.

use anyhow::Result;
use gct_core::manifold::base_point;
use gct_core::profile::{One, Polynomial};
use gct_core::specfun::pole_order_c;
use gct_core::spectrum::{enumerate_weights, eta, f1_image_member, gamma_eta};
use gct_core::transform::{ac_gamma_c, cosine_kernel, cosine_quadrature, partial_funk, profile_on_subspace};
use gct_core::{GrassmannianSpec, MeromorphicScalar};
use serde_json::{json, Value};

use crate::args::{settings, LimitArgs, Method, SpectrumArgs, TransformArgs};
use crate::expr::parse_profile;
use crate::parallel::montecarlo;
use crate::report::{Cell, Report};
use crate::{core_error, UsageError};

fn config(command: &str, args: &impl serde::Serialize, extra: Value) -> Value {
    let mut v = json!({ "command": command, "args": args });
    if let (Value::Object(obj), Value::Object(more)) = (&mut v, extra) {
        obj.extend(more);
    }
    v
}

fn profile(src: &str, spec: &GrassmannianSpec) -> Result<Polynomial> {
    parse_profile(src, spec.p()).map_err(|e| UsageError(format!("profile {src:?}: {e}")).into())
}

/// Finite value, or `inf` at a pole.
fn meromorphic_cell(x: MeromorphicScalar) -> Cell {
    match x.finite_value() {
        Some(v) => Cell::Num(v),
        None => Cell::Num(f64::INFINITY),
    }
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Report> {
    let spec = args.space.spec()?;
    let p = spec.p();
    let mut header: Vec<String> = (1..=p).map(|i| format!("m{i}")).collect();
    header.extend(["lambda", "eta", "pole_order", "ac_at_minus1", "in_f1_image"].map(String::from));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut report = Report::new(config("spectrum", args, json!({})), &header);
    for mu in enumerate_weights(&spec, args.max_degree) {
        let at_minus1 = meromorphic_cell(gamma_eta(&spec, &mu, -1.0));
        for &lam in &args.lambda {
            let e = eta(&spec, &mu, lam);
            let mut row: Vec<Cell> = mu.m.iter().map(|&m| Cell::Int(m)).collect();
            row.push(lam.into());
            row.push(meromorphic_cell(e));
            row.push(Cell::Int(e.pole_order.max(0) as i64));
            row.push(at_minus1.clone());
            row.push(f1_image_member(&mu).into());
            report.push(row);
        }
    }
    Ok(report)
}

pub fn transform(args: &TransformArgs) -> Result<Report> {
    let spec = args.space.spec()?;
    let f = profile(&args.profile, &spec)?;
    let cfg = args.quad.resolve()?;
    let mut report = Report::new(
        config("transform", args, json!({ "quadrature": settings(&cfg) })),
        &["method", "lambda", "value", "error", "samples"],
    );
    let lam = args.lambda;
    for method in &args.method {
        match method {
            Method::Quad => {
                let v = cosine_quadrature(&spec, &f, lam, &cfg).map_err(core_error)?;
                // the refinement accepted a level change within this bound
                report.push(vec!["quad".into(), lam.into(), v.into(), (cfg.rel_tol * v.abs()).into(), Cell::Empty]);
            }
            Method::Mc => {
                if !(spec.d() as f64 * lam > -1.0) {
                    return Err(UsageError("cosine transform needs d*lambda > -1".into()).into());
                }
                if args.samples == 0 {
                    return Err(UsageError("need at least one sample".into()).into());
                }
                let omega = base_point(&spec);
                let stats = montecarlo(&spec, args.seed, args.samples, 1, |x, out| {
                    out[0] = cosine_kernel(&spec, x, &omega, lam).unwrap_or(f64::NAN) * profile_on_subspace(&f, x);
                });
                let e = stats[0].estimate();
                report.push(vec![
                    "mc".into(),
                    lam.into(),
                    e.estimate.into(),
                    e.stderr.into(),
                    Cell::Int(e.samples as i64),
                ]);
            }
        }
    }
    Ok(report)
}

pub fn limit(args: &LimitArgs) -> Result<Report> {
    let spec = args.space.spec()?;
    let f = profile(&args.profile, &spec)?;
    let cfg = args.quad.resolve()?;
    let p = spec.p() as i64;
    if !(-p..=-1).contains(&args.pole) {
        return Err(UsageError(format!("pole must be one of -1, ..., -{p}")).into());
    }
    let lam0 = args.pole as f64;
    if pole_order_c(&spec, lam0) == 0 {
        return Err(UsageError(format!("{lam0} is a regular point on {spec}")).into());
    }
    let mut report = Report::new(
        config("limit", args, json!({ "quadrature": settings(&cfg) })),
        &["kind", "epsilon", "value", "error"],
    );
    let lim = ac_gamma_c(&spec, &f, lam0, &cfg).map_err(core_error)?;
    let unit = ac_gamma_c(&spec, &One, lam0, &cfg).map_err(core_error)?;
    for &(eps, g) in &lim.ladder {
        report.push(vec!["ladder".into(), eps.into(), g.into(), Cell::Empty]);
    }
    report.push(vec!["limit".into(), Cell::Empty, lim.value.into(), lim.error.into()]);
    report.push(vec!["unit_limit".into(), Cell::Empty, unit.value.into(), unit.error.into()]);
    let normalized = lim.value / unit.value;
    let normalized_err = normalized.abs() * (lim.error / lim.value.abs().max(f64::MIN_POSITIVE) + unit.error / unit.value.abs());
    report.push(vec!["normalized".into(), Cell::Empty, normalized.into(), normalized_err.into()]);
    // the partial Funk transform F_m, m = -pole, where it is defined
    let m = (-args.pole) as usize;
    if m == 1 || spec.d() == 1 {
        let pf = partial_funk(&spec, &f, m, &cfg).map_err(core_error)?;
        report.push(vec!["partial_funk".into(), Cell::Empty, pf.into(), Cell::Empty]);
    }
    Ok(report)
}
