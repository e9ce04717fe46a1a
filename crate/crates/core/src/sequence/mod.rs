//! Sequences, gaps and normalization.

mod generate;
mod io;

pub use generate::{generate, generate_with_meta, quadratic_form_raw, Generated, GeneratorConfig, GeneratorKind};
pub use io::{
    format_value, ingest_and_unfold, parse_gap_text, parse_sequence_text, read_gap_file, read_sequence_file,
    unfold_zeta, write_sequence_text, UnfoldMode,
};

use crate::error::{Error, Result};

/// A finite, strictly increasing sequence `λ_1 < … < λ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence {
    values: Vec<f64>,
}

impl RealSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::SequenceTooShort { needed: 1, got: 0 });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        for (index, w) in values.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::NotIncreasing {
                    index: index + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::PrefixOutOfRange {
                n,
                available: self.len(),
            });
        }
        Ok(Self {
            values: self.values[..n].to_vec(),
        })
    }

    pub fn gaps(&self) -> Result<GapSequence> {
        gaps_of(self)
    }
}

/// Consecutive gaps `g_n = λ_{n+1} − λ_n`, with a cached prefix-sum table.
///
/// Indices in the public API are 1-based to match [`crate::IndexInterval`].
/// Gaps must be finite and non-negative; gaps derived from a
/// [`RealSequence`] are strictly positive. Zero gaps are tolerated so that
/// hand-written partition fixtures can use literal zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSequence {
    gaps: Vec<f64>,
    // prefix[i] = g_1 + … + g_i, summed left to right; prefix[0] = 0.
    prefix: Vec<f64>,
}

impl GapSequence {
    pub fn new(gaps: Vec<f64>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::SequenceTooShort { needed: 1, got: 0 });
        }
        for (index, &g) in gaps.iter().enumerate() {
            if !g.is_finite() || g < 0.0 {
                return Err(Error::InvalidGap {
                    index: index + 1,
                    value: g,
                });
            }
        }
        let mut prefix = Vec::with_capacity(gaps.len() + 1);
        let mut acc = 0.0;
        prefix.push(acc);
        for &g in &gaps {
            acc += g;
            prefix.push(acc);
        }
        Ok(Self { gaps, prefix })
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// `g_index`, 1-based.
    pub fn gap(&self, index: usize) -> f64 {
        self.gaps[index - 1]
    }

    /// `g_left + … + g_right` (1-based, inclusive), evaluated as a difference
    /// of prefix sums. Monotone in both endpoints, which is what the
    /// two-pointer counters rely on.
    #[inline]
    pub fn window_sum(&self, left: usize, right: usize) -> f64 {
        debug_assert!(1 <= left && left <= right && right <= self.len());
        self.prefix[right] - self.prefix[left - 1]
    }

    pub fn total(&self) -> f64 {
        self.prefix[self.len()]
    }

    pub fn min_gap(&self) -> f64 {
        self.gaps.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// The first `n` gaps.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::PrefixOutOfRange {
                n,
                available: self.len(),
            });
        }
        Ok(Self {
            gaps: self.gaps[..n].to_vec(),
            prefix: self.prefix[..=n].to_vec(),
        })
    }

    pub(crate) fn check_prefix(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.len() {
            return Err(Error::PrefixOutOfRange {
                n,
                available: self.len(),
            });
        }
        Ok(())
    }
}

pub fn gaps_of(seq: &RealSequence) -> Result<GapSequence> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            got: seq.len(),
        });
    }
    let gaps: Vec<f64> = seq.values().windows(2).map(|w| w[1] - w[0]).collect();
    GapSequence::new(gaps)
}

/// `(λ_N − λ_1) / (N − 1)`.
pub fn mean_gap(seq: &RealSequence) -> Result<f64> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::SequenceTooShort { needed: 2, got: n });
    }
    let v = seq.values();
    Ok((v[n - 1] - v[0]) / (n - 1) as f64)
}

/// Translate to start at 0 and rescale to mean gap 1.
pub fn normalize_mean_gap(seq: &RealSequence) -> Result<RealSequence> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::SequenceTooShort { needed: 2, got: n });
    }
    RealSequence::new(normalize_values(seq.values())?)
}

// Shared with the quadratic-form generator, whose raw values may contain ties.
// The last element comes out as exactly N − 1.
pub(crate) fn normalize_values(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    let first = values[0];
    let span = values[n - 1] - first;
    if span.is_nan() || span <= 0.0 {
        return Err(Error::DegenerateSequence);
    }
    let steps = (n - 1) as f64;
    Ok(values.iter().map(|&v| (v - first) / span * steps).collect())
}

/// Prefix sums `(g_1, g_1 + g_2, …)`, the inverse of [`gaps_of`] up to the
/// starting point.
pub fn prefix_sums(gaps: &[f64]) -> Vec<f64> {
    gaps.iter()
        .scan(0.0, |acc, &g| {
            *acc += g;
            Some(*acc)
        })
        .collect()
}
