use std::path::PathBuf;

use anyhow::Result;
use clap::{ArgGroup, Args};
use ppc_lab::partition::{check_partition, greedy_partition, maximal_blocks, sandwiched_indices, PartitionCheck};
use ppc_lab::GreedyPartition;
use serde::Serialize;

use super::{load_gaps, load_sequence, prefix_len};
use crate::manifest::{emit, RunManifest};
use crate::Outcome;

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "gaps"])))]
pub struct PartitionArgs {
    /// Sequence file; gaps are taken between consecutive points.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Gap file, one non-negative gap per line.
    #[arg(long)]
    pub gaps: Option<PathBuf>,
    /// Per-part sum budget.
    #[arg(long, default_value_t = 0.5)]
    pub budget: f64,
    /// Block threshold on individual gaps (defaults to the budget).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Number of gaps considered (defaults to all).
    #[arg(long)]
    pub n: Option<usize>,
    /// Verify the cross-term bounds; exit 1 on any violation.
    #[arg(long)]
    pub check: bool,
}

#[derive(Serialize)]
struct BlockBody<'a> {
    block_index: usize,
    #[serde(flatten)]
    partition: &'a GreedyPartition,
    sandwiched: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<PartitionCheck>,
}

pub fn run(args: PartitionArgs) -> Result<Outcome> {
    let (g, path) = match (&args.input, &args.gaps) {
        (Some(p), _) => (load_sequence(p)?.gaps()?, p),
        (None, Some(p)) => (load_gaps(p)?, p),
        (None, None) => unreachable!("clap enforces one source"),
    };
    let n = prefix_len(args.n, g.len())?;
    let threshold = args.threshold.unwrap_or(args.budget);
    let manifest = RunManifest::new("partition", &args)?.with_input(path)?;

    let blocks = maximal_blocks(&g, n, threshold)?;
    let mut outcome = Outcome::Clean;
    for (i, block) in blocks.blocks.iter().enumerate() {
        let p = greedy_partition(&g, block, args.budget)?;
        let check = if args.check {
            Some(check_partition(&p, &g)?)
        } else {
            None
        };
        if check.as_ref().is_some_and(|c| !c.ok) {
            outcome = Outcome::Violation;
        }
        let body = BlockBody {
            block_index: i + 1,
            partition: &p,
            sandwiched: sandwiched_indices(&p).into_iter().collect(),
            check,
        };
        emit(&manifest, &body)?;
    }
    Ok(outcome)
}
