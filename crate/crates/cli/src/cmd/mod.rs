pub mod analyze;
pub mod audit;
pub mod generate;
pub mod partition;
pub mod verify;

use std::path::Path;

use anyhow::{Context, Result};
use ppc_lab::sequence::{read_gap_file, read_sequence_file};
use ppc_lab::{GapSequence, RealSequence};

pub fn load_sequence(path: &Path) -> Result<RealSequence> {
    read_sequence_file(path).with_context(|| format!("reading sequence {}", path.display()))
}

pub fn load_gaps(path: &Path) -> Result<GapSequence> {
    read_gap_file(path).with_context(|| format!("reading gaps {}", path.display()))
}

/// Resolves an optional prefix length against the available count.
pub fn prefix_len(n: Option<usize>, available: usize) -> Result<usize> {
    let n = n.unwrap_or(available);
    anyhow::ensure!((1..=available).contains(&n), "--n {n} is outside 1..={available}");
    Ok(n)
}
