//! Command-line arguments. Every argument struct is serializable so a run
//! can be echoed, and reproduced, from its configuration alone.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gct_core::{Field, GrassmannianSpec, QuadratureConfig, Scheme};
use serde::Serialize;

use crate::report::Format;
use crate::UsageError;

#[derive(Parser, Debug)]
#[command(name = "gct", version, about = "Cosine-λ transforms on Grassmann manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Tabulate the K-spectrum η_μ(λ) with pole data and the first-pole image flag.
    Spectrum(SpectrumArgs),
    /// Evaluate C^λ f at the base point by quadrature and/or Monte Carlo.
    Transform(TransformArgs),
    /// Continue γ(λ) C^λ f(β) to a pole and compare with the partial Funk transform.
    Limit(LimitArgs),
    /// Run a named self-check suite; exits with status 1 if any check fails.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
pub enum FieldArg {
    #[value(name = "R", alias = "r", alias = "real")]
    R,
    #[value(name = "C", alias = "c", alias = "complex")]
    C,
    #[value(name = "H", alias = "h", alias = "quaternion")]
    H,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::R => Field::Real,
            FieldArg::C => Field::Complex,
            FieldArg::H => Field::Quaternion,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpaceArgs {
    /// Subspace dimension.
    #[arg(long)]
    pub p: usize,
    /// Codimension; the ambient dimension is p + q.
    #[arg(long)]
    pub q: usize,
    /// Scalar field: R, C or H.
    #[arg(long, value_enum)]
    pub field: FieldArg,
}

impl SpaceArgs {
    pub fn spec(&self) -> Result<GrassmannianSpec, UsageError> {
        GrassmannianSpec::new(self.p, self.q, self.field.into()).map_err(|e| UsageError(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SchemeArg {
    TanhSinh,
    GaussLegendre,
}

/// Overrides of the default quadrature settings.
#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct QuadArgs {
    /// Nodes per dimension at the coarsest level.
    #[arg(long)]
    pub nodes_per_dim: Option<usize>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// Relative tolerance between refinement levels.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Extrapolation offsets ε, strictly decreasing, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub epsilons: Option<Vec<f64>>,
    /// Tolerance on the disagreement of extrapolants.
    #[arg(long)]
    pub extrapolation_tol: Option<f64>,
    #[arg(long)]
    pub max_refinements: Option<u32>,
}

/// The resolved quadrature configuration, as echoed in outputs.
#[derive(Debug, Clone, Serialize)]
pub struct QuadSettings {
    pub nodes_per_dim: usize,
    pub scheme: SchemeArg,
    pub rel_tol: f64,
    pub extrapolation_epsilons: Vec<f64>,
    pub extrapolation_tol: f64,
    pub max_refinements: u32,
}

impl QuadArgs {
    pub fn resolve(&self) -> Result<QuadratureConfig, UsageError> {
        let mut cfg = QuadratureConfig::default();
        if let Some(n) = self.nodes_per_dim {
            cfg.nodes_per_dim = n;
        }
        if let Some(s) = self.scheme {
            cfg.scheme = match s {
                SchemeArg::TanhSinh => Scheme::TanhSinh,
                SchemeArg::GaussLegendre => Scheme::GaussLegendre,
            };
        }
        if let Some(t) = self.rel_tol {
            cfg.rel_tol = t;
        }
        if let Some(e) = &self.epsilons {
            cfg.extrapolation_epsilons = e.clone();
        }
        if let Some(t) = self.extrapolation_tol {
            cfg.extrapolation_tol = t;
        }
        if let Some(m) = self.max_refinements {
            cfg.max_refinements = m;
        }
        cfg.validate().map_err(|e| UsageError(e.to_string()))?;
        Ok(cfg)
    }
}

pub fn settings(cfg: &QuadratureConfig) -> QuadSettings {
    QuadSettings {
        nodes_per_dim: cfg.nodes_per_dim,
        scheme: match cfg.scheme {
            Scheme::TanhSinh => SchemeArg::TanhSinh,
            Scheme::GaussLegendre => SchemeArg::GaussLegendre,
        },
        rel_tol: cfg.rel_tol,
        extrapolation_epsilons: cfg.extrapolation_epsilons.clone(),
        extrapolation_tol: cfg.extrapolation_tol,
        max_refinements: cfg.max_refinements,
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Largest first entry m_1 of the enumerated weights.
    #[arg(long)]
    pub max_degree: u32,
    /// Values of λ, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
    pub lambda: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quad,
    Mc,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TransformArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Profile: `one` or a polynomial in c1..cp, where ci = cos²t_i.
    #[arg(long = "f", default_value = "one")]
    pub profile: String,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Evaluation methods, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "quad")]
    pub method: Vec<Method>,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LimitArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Profile: `one` or a polynomial in c1..cp.
    #[arg(long = "f", default_value = "one")]
    pub profile: String,
    /// The pole, one of -1, ..., -p.
    #[arg(long, allow_negative_numbers = true)]
    pub pole: i64,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    #[value(name = "lemma58")]
    ProductLaw,
    Spectrum,
    Normalization,
    #[value(name = "pole1")]
    Pole1,
    #[value(name = "higher_poles")]
    HigherPoles,
    #[value(name = "image_kernel")]
    ImageKernel,
    Haar,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo sample count for sampling-based checks.
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
}
