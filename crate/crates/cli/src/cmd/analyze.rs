use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use ppc_lab::correlation::{gap_count_le, pair_correlation_batch};
use ppc_lab::sequence::format_value;
use ppc_lab::Interval;
use serde::Serialize;

use super::{load_sequence, prefix_len};
use crate::manifest::{emit, RunManifest};
use crate::Outcome;

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `lo,hi`; repeatable. Half-open `[lo, hi)` unless overridden.
    #[arg(long = "interval", value_name = "LO,HI", allow_hyphen_values = true)]
    pub intervals: Vec<String>,
    /// Prefix length (defaults to the whole sequence).
    #[arg(long)]
    pub n: Option<usize>,
    /// Use open intervals `(lo, hi)`.
    #[arg(long, conflicts_with = "closed")]
    pub open: bool,
    /// Use closed intervals `[lo, hi]`.
    #[arg(long)]
    pub closed: bool,
    /// Gap CDF sample grid `lo:hi:step`.
    #[arg(long, value_name = "LO:HI:STEP", allow_hyphen_values = true)]
    pub cdf_grid: Option<String>,
    /// CSV destination for the CDF grid (stdout when omitted).
    #[arg(long, requires = "cdf_grid")]
    pub cdf_out: Option<PathBuf>,
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    let x: f64 = s.trim().parse().with_context(|| format!("bad {what} {s:?}"))?;
    if !x.is_finite() {
        bail!("{what} must be finite, got {s:?}");
    }
    Ok(x)
}

pub fn parse_interval(s: &str, open: bool, closed: bool) -> Result<Interval> {
    let Some((lo, hi)) = s.split_once(',') else {
        bail!("interval must be LO,HI, got {s:?}");
    };
    let (lo, hi) = (parse_number(lo, "interval bound")?, parse_number(hi, "interval bound")?);
    let interval = if open {
        Interval::open(lo, hi)
    } else if closed {
        Interval::closed(lo, hi)
    } else {
        Interval::half_open(lo, hi)
    };
    Ok(interval?)
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        bail!("grid must be LO:HI:STEP, got {s:?}");
    };
    let (lo, hi, step) = (
        parse_number(lo, "grid bound")?,
        parse_number(hi, "grid bound")?,
        parse_number(step, "grid step")?,
    );
    if step <= 0.0 || hi < lo {
        bail!("grid needs step > 0 and lo ≤ hi, got {s:?}");
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| lo + k as f64 * step).collect())
}

pub fn run(args: AnalyzeArgs) -> Result<Outcome> {
    let seq = load_sequence(&args.input)?;
    let n = prefix_len(args.n, seq.len())?;
    let intervals = args
        .intervals
        .iter()
        .map(|s| parse_interval(s, args.open, args.closed))
        .collect::<Result<Vec<_>>>()?;
    let grid = args.cdf_grid.as_deref().map(parse_grid).transpose()?;
    if intervals.is_empty() && grid.is_none() {
        bail!("nothing to do: pass --interval and/or --cdf-grid");
    }

    let manifest = RunManifest::new("analyze", &args)?.with_input(&args.input)?;
    for report in pair_correlation_batch(&seq, &intervals, n)? {
        emit(&manifest, &report)?;
    }

    if let Some(grid) = grid {
        anyhow::ensure!(n >= 2, "--cdf-grid needs at least two points");
        let gaps = seq.prefix(n)?.gaps()?;
        let m = gaps.len();
        let mut csv = String::from("x,count,cdf\n");
        for x in grid {
            let c = gap_count_le(&gaps, x, m)?;
            csv.push_str(&format!(
                "{},{},{}\n",
                format_value(x),
                c,
                format_value(c as f64 / m as f64)
            ));
        }
        match &args.cdf_out {
            Some(path) => std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().lock().write_all(csv.as_bytes())?,
        }
    }
    Ok(Outcome::Clean)
}
