use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand};
use ppc_lab::verifier::{
    bias_check, bias_random_suite, final_inequality, lemma512_exhaustive, lemma512_random_real, tuple_count, BiasCheck,
    BiasViolation, RealCounterexample,
};
use serde::Serialize;

use super::load_gaps;
use crate::manifest::{emit, RunManifest};
use crate::Outcome;

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Exhaustive integer check of the 5/12 lemma, optionally a real-valued fuzz.
    Lemma512(Lemma512Args),
    /// Random-block check of the bias-near-zero bound.
    Bias(BiasArgs),
    /// Evaluate the limiting inequality in epsilon.
    FinalIneq(FinalIneqArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Lemma512Args {
    #[arg(long)]
    pub lmax: u64,
    /// Number of real-valued samples (none when omitted).
    #[arg(long)]
    pub real_samples: Option<u64>,
    /// Upper end for real-valued L (defaults to --lmax).
    #[arg(long)]
    pub real_lmax: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
struct Lemma512Body {
    l_max: u64,
    checked: u64,
    expected_checked: u64,
    counterexamples: Vec<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    real_samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    real_counterexamples: Option<Vec<RealCounterexample>>,
    verdict: &'static str,
}

#[derive(Debug, Args, Serialize)]
pub struct BiasArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest random block length.
    #[arg(long, default_value_t = 64)]
    pub max_len: usize,
    /// Rescale each block to total exactly 1/2 before counting.
    #[arg(long)]
    pub strict_scale: bool,
    /// Check a single block read from a gap file instead of random blocks.
    #[arg(long)]
    pub gaps: Option<PathBuf>,
}

#[derive(Serialize)]
struct BiasSuiteBody<'a> {
    samples: u64,
    max_len: usize,
    violations: &'a [BiasViolation],
    verdict: &'static str,
}

#[derive(Serialize)]
struct BiasBlockBody {
    #[serde(flatten)]
    check: BiasCheck,
    verdict: &'static str,
}

#[derive(Debug, Args, Serialize)]
pub struct FinalIneqArgs {
    #[arg(long)]
    pub epsilon: f64,
}

#[derive(Serialize)]
struct FinalBody {
    epsilon: f64,
    value: f64,
    verdict: &'static str,
}

fn verdict(clean: bool) -> &'static str {
    if clean {
        "no counterexample"
    } else {
        "counterexample found"
    }
}

fn outcome(clean: bool) -> Outcome {
    if clean {
        Outcome::Clean
    } else {
        Outcome::Violation
    }
}

pub fn run(cmd: VerifyCommand) -> Result<Outcome> {
    match cmd {
        VerifyCommand::Lemma512(a) => lemma512(a),
        VerifyCommand::Bias(a) => bias(a),
        VerifyCommand::FinalIneq(a) => final_ineq(a),
    }
}

fn lemma512(args: Lemma512Args) -> Result<Outcome> {
    anyhow::ensure!(args.lmax >= 1, "--lmax must be at least 1");
    let r = lemma512_exhaustive(args.lmax);
    let expected_checked = tuple_count(args.lmax);
    let real = args
        .real_samples
        .map(|s| lemma512_random_real(s, args.real_lmax.unwrap_or(args.lmax as f64), args.seed))
        .transpose()?;
    let clean =
        r.counterexamples.is_empty() && r.checked == expected_checked && real.as_ref().is_none_or(|v| v.is_empty());
    let mut manifest = RunManifest::new("verify lemma512", &args)?;
    if args.real_samples.is_some() {
        manifest = manifest.with_seed(args.seed);
    }
    let body = Lemma512Body {
        l_max: r.l_max,
        checked: r.checked,
        expected_checked,
        counterexamples: r.counterexamples,
        real_samples: args.real_samples,
        real_counterexamples: real,
        verdict: verdict(clean),
    };
    emit(&manifest, &body)?;
    Ok(outcome(clean))
}

fn bias(args: BiasArgs) -> Result<Outcome> {
    if let Some(path) = &args.gaps {
        let check = bias_check(&load_gaps(path)?, args.strict_scale)?;
        let manifest = RunManifest::new("verify bias", &args)?.with_input(path)?;
        emit(
            &manifest,
            &BiasBlockBody {
                check,
                verdict: verdict(check.ok),
            },
        )?;
        return Ok(outcome(check.ok));
    }
    let suite = bias_random_suite(args.samples, args.seed, args.max_len, args.strict_scale)?;
    let clean = suite.violations.is_empty();
    let manifest = RunManifest::new("verify bias", &args)?.with_seed(args.seed);
    let body = BiasSuiteBody {
        samples: suite.samples,
        max_len: suite.max_len,
        violations: &suite.violations,
        verdict: verdict(clean),
    };
    emit(&manifest, &body)?;
    Ok(outcome(clean))
}

fn final_ineq(args: FinalIneqArgs) -> Result<Outcome> {
    anyhow::ensure!(
        args.epsilon > 0.0 && args.epsilon.is_finite(),
        "--epsilon must be positive, got {}",
        args.epsilon
    );
    let value = final_inequality(args.epsilon);
    let fails = value < 0.0;
    let body = FinalBody {
        epsilon: args.epsilon,
        value,
        verdict: if fails {
            "inequality fails ⇒ contradiction stands"
        } else {
            "inequality holds ⇒ no contradiction"
        },
    };
    emit(&RunManifest::new("verify final-ineq", &args)?, &body)?;
    Ok(outcome(fails))
}
