//! Plain-text sequence files: one decimal number per line, `#` comments.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GapSequence, RealSequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnfoldMode {
    Raw,
    /// `γ ↦ γ·ln(γ)/(2π)`, for tables of zeta-zero ordinates.
    ZetaUnfold,
}

/// 17 significant digits, enough to round-trip any binary64 value.
pub fn format_value(x: f64) -> String {
    format!("{:.16e}", x)
}

// (line number, value) for every non-comment, non-blank line.
fn parse_lines(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
            line,
            message: format!("cannot parse {trimmed:?} as a number"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("non-finite value {trimmed:?}"),
            });
        }
        out.push((line, v));
    }
    Ok(out)
}

pub fn parse_sequence_text(text: &str) -> Result<RealSequence> {
    let rows = parse_lines(text)?;
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no values".into(),
        });
    }
    for w in rows.windows(2) {
        if w[1].1 <= w[0].1 {
            return Err(Error::Parse {
                line: w[1].0,
                message: format!("not strictly increasing: {} after {}", w[1].1, w[0].1),
            });
        }
    }
    RealSequence::new(rows.into_iter().map(|(_, v)| v).collect())
}

/// Same file format, but each value is a gap (non-negative, any order).
pub fn parse_gap_text(text: &str) -> Result<GapSequence> {
    let rows = parse_lines(text)?;
    if let Some(&(line, v)) = rows.iter().find(|(_, v)| *v < 0.0) {
        return Err(Error::Parse {
            line,
            message: format!("negative gap {v}"),
        });
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no values".into(),
        });
    }
    GapSequence::new(rows.into_iter().map(|(_, v)| v).collect())
}

pub fn write_sequence_text(seq: &RealSequence) -> String {
    let mut out = String::with_capacity(seq.len() * 24);
    for &v in seq.values() {
        out.push_str(&format_value(v));
        out.push('\n');
    }
    out
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_sequence_file(path: impl AsRef<Path>) -> Result<RealSequence> {
    parse_sequence_text(&read_text(path.as_ref())?)
}

pub fn read_gap_file(path: impl AsRef<Path>) -> Result<GapSequence> {
    parse_gap_text(&read_text(path.as_ref())?)
}

pub fn unfold_zeta(gamma: f64) -> f64 {
    gamma * gamma.ln() / (2.0 * PI)
}

pub fn ingest_and_unfold(path: impl AsRef<Path>, mode: UnfoldMode) -> Result<RealSequence> {
    ingest_text(&read_text(path.as_ref())?, mode)
}

pub(crate) fn ingest_text(text: &str, mode: UnfoldMode) -> Result<RealSequence> {
    let seq = parse_sequence_text(text)?;
    match mode {
        UnfoldMode::Raw => Ok(seq),
        UnfoldMode::ZetaUnfold => {
            let rows = parse_lines(text)?;
            if let Some(&(line, v)) = rows.iter().find(|(_, v)| *v <= 1.0) {
                return Err(Error::Parse {
                    line,
                    message: format!("zeta unfolding needs values > 1, got {v}"),
                });
            }
            // x ln x is increasing for x > 1/e, so order is preserved.
            RealSequence::new(seq.values().iter().map(|&g| unfold_zeta(g)).collect())
        }
    }
}
