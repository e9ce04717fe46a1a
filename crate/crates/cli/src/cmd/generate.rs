use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use ppc_lab::sequence::{generate_with_meta, ingest_and_unfold, mean_gap, normalize_mean_gap, write_sequence_text};
use ppc_lab::{GeneratorConfig, GeneratorKind, UnfoldMode};
use serde::Serialize;

use crate::manifest::{hash_file, to_line, RunManifest};
use crate::Outcome;

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindArg {
    Poisson,
    Capped,
    #[value(name = "quadratic_form", alias = "quadratic-form")]
    QuadraticForm,
}

impl From<KindArg> for GeneratorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Poisson => GeneratorKind::Poisson,
            KindArg::Capped => GeneratorKind::Capped,
            KindArg::QuadraticForm => GeneratorKind::QuadraticForm,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Number of points.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Gap cap for the capped generator, before renormalization.
    #[arg(long)]
    pub cap: Option<f64>,
    /// Coefficient of y² for the quadratic form generator.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Value cutoff for the quadratic form generator.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Serialize)]
struct GenerateBody<'a> {
    output: &'a str,
    output_hash: String,
    n_points: usize,
    scale: f64,
    perturbed_ties: usize,
}

pub fn sidecar_path(output: &std::path::Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn run_generate(args: GenerateArgs) -> Result<Outcome> {
    let mut cfg = GeneratorConfig::new(args.kind.into(), args.n, args.seed).with_cutoff(args.cutoff);
    if let Some(cap) = args.cap {
        cfg = cfg.with_cap(cap);
    }
    if let Some(alpha) = args.alpha {
        cfg = cfg.with_alpha(alpha);
    }
    let generated = generate_with_meta(&cfg)?;
    std::fs::write(&args.output, write_sequence_text(&generated.sequence))
        .with_context(|| format!("writing {}", args.output.display()))?;

    let manifest = RunManifest::new("generate", &args)?.with_seed(args.seed);
    let body = GenerateBody {
        output: &args.output.to_string_lossy(),
        output_hash: hash_file(&args.output)?,
        n_points: generated.sequence.len(),
        scale: generated.scale,
        perturbed_ties: generated.perturbed_ties,
    };
    let line = to_line(&manifest, &body)?;
    let sidecar = sidecar_path(&args.output);
    std::fs::write(&sidecar, format!("{line}\n")).with_context(|| format!("writing {}", sidecar.display()))?;
    println!("{line}");
    Ok(Outcome::Clean)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Raw,
    #[value(name = "zeta-unfold", alias = "zeta_unfold")]
    ZetaUnfold,
}

#[derive(Debug, Args, Serialize)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "raw")]
    pub mode: ModeArg,
    /// Rescale to mean gap 1 after unfolding.
    #[arg(long)]
    pub normalize: bool,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Serialize)]
struct IngestBody<'a> {
    output: &'a str,
    output_hash: String,
    n_points: usize,
    first: f64,
    last: f64,
    mean_gap: Option<f64>,
}

pub fn run_ingest(args: IngestArgs) -> Result<Outcome> {
    let mode = match args.mode {
        ModeArg::Raw => UnfoldMode::Raw,
        ModeArg::ZetaUnfold => UnfoldMode::ZetaUnfold,
    };
    let mut seq = ingest_and_unfold(&args.input, mode).with_context(|| format!("reading {}", args.input.display()))?;
    if args.normalize {
        seq = normalize_mean_gap(&seq)?;
    }
    std::fs::write(&args.output, write_sequence_text(&seq))
        .with_context(|| format!("writing {}", args.output.display()))?;
    let manifest = RunManifest::new("ingest", &args)?.with_input(&args.input)?;
    let values = seq.values();
    let body = IngestBody {
        output: &args.output.to_string_lossy(),
        output_hash: hash_file(&args.output)?,
        n_points: seq.len(),
        first: values[0],
        last: values[values.len() - 1],
        mean_gap: mean_gap(&seq).ok(),
    };
    println!("{}", to_line(&manifest, &body)?);
    Ok(Outcome::Clean)
}
