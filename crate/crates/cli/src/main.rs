//! `ppc-lab`: generate, ingest, analyze, partition, verify and audit.
//!
//! Exit codes: 0 success, 1 a verified violation or failed check, 2 usage
//! or input error.

mod cmd;
mod manifest;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ppc-lab", version, about = "Pair-correlation and gap-structure toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded synthetic sequence plus a sidecar manifest.
    Generate(cmd::generate::GenerateArgs),
    /// Read a raw or zeta-ordinate table and write a sequence file.
    Ingest(cmd::generate::IngestArgs),
    /// Pair correlation over intervals, optionally a gap CDF grid.
    Analyze(cmd::analyze::AnalyzeArgs),
    /// Maximal low-gap blocks and their greedy partitions.
    Partition(cmd::partition::PartitionArgs),
    /// Check the quantitative inequalities.
    Verify {
        #[command(subcommand)]
        what: cmd::verify::VerifyCommand,
    },
    /// Finite-N evaluation of every step of the contradiction argument.
    Audit(cmd::audit::AuditArgs),
}

/// Result of a subcommand that completed without an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Violation,
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("PPC_LAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("PPC_LAB_THREADS must be a positive integer, got {v:?}"))?;
        anyhow::ensure!(n > 0, "PPC_LAB_THREADS must be a positive integer, got {v:?}");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    configure_threads()?;
    match cli.command {
        Command::Generate(a) => cmd::generate::run_generate(a),
        Command::Ingest(a) => cmd::generate::run_ingest(a),
        Command::Analyze(a) => cmd::analyze::run(a),
        Command::Partition(a) => cmd::partition::run(a),
        Command::Verify { what } => cmd::verify::run(what),
        Command::Audit(a) => cmd::audit::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
