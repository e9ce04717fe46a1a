use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use ppc_lab::verifier::audit;
use ppc_lab::AuditConfig;
use serde::Serialize;

use super::load_sequence;
use crate::manifest::{emit, RunManifest};
use crate::Outcome;

#[derive(Debug, Args, Serialize)]
pub struct AuditArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    /// Number of gaps audited (capped at the sequence length minus one).
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub budget: f64,
    /// Also print each step as `step: lhs REL rhs (margin m)` on stderr.
    #[arg(long)]
    pub explain: bool,
}

/// The audit only reports; its exit code reflects input errors alone.
pub fn run(args: AuditArgs) -> Result<Outcome> {
    let seq = load_sequence(&args.input)?;
    let cfg = AuditConfig::new(args.epsilon, args.n).with_budget(args.budget);
    let report = audit(&seq, &cfg)?;
    let manifest = RunManifest::new("audit", &args)?.with_input(&args.input)?;
    emit(&manifest, &report)?;
    if args.explain {
        for f in &report.flags {
            let rel = serde_json::to_value(f.relation)?;
            eprintln!(
                "{:<16} {:e} {} {:e}  (margin {:e}, {})",
                f.step,
                f.lhs,
                rel.as_str().unwrap_or("?"),
                f.rhs,
                f.margin,
                if f.holds { "holds" } else { "does not hold" }
            );
        }
    }
    Ok(Outcome::Clean)
}
