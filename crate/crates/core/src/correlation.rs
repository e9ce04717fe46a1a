//! Pair-correlation and window-sum counting.
//!
//! Every counter here is a two-pointer sweep. For pair differences the sweep
//! relies on `v[j] − v[i]` being monotone in both indices, and for window
//! sums on [`GapSequence::window_sum`] being monotone in both endpoints.
//! Both hold exactly in binary64, so the sweeps agree with brute-force
//! enumeration bit for bit; no comparison tolerance is used anywhere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{GapSequence, RealSequence};

/// A real interval with explicit endpoint closedness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidInterval("NaN endpoint".into()));
        }
        if lo > hi {
            return Err(Error::InvalidInterval(format!("lo {lo} > hi {hi}")));
        }
        Ok(Self {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.lo_closed && self.hi_closed)
    }

    /// `|I| = hi − lo`.
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// `−I = {−x : x ∈ I}`.
    pub fn reflected(&self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        debug_assert!(c > 0.0);
        Self {
            lo: self.lo * c,
            hi: self.hi * c,
            ..*self
        }
    }

    #[inline]
    pub fn above_lo(&self, x: f64) -> bool {
        if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        }
    }

    #[inline]
    pub fn below_hi(&self, x: f64) -> bool {
        if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.above_lo(x) && self.below_hi(x)
    }
}

/// A 1-based, inclusive range of gap indices `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct IndexInterval {
    left: usize,
    right: usize,
}

impl IndexInterval {
    pub fn new(left: usize, right: usize) -> Result<Self> {
        if left == 0 || left > right {
            return Err(Error::InvalidIndexInterval { left, right });
        }
        Ok(Self { left, right })
    }

    pub(crate) fn new_unchecked(left: usize, right: usize) -> Self {
        debug_assert!(1 <= left && left <= right);
        Self { left, right }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn len(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.left <= i && i <= self.right
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.left..=self.right
    }
}

impl From<IndexInterval> for [usize; 2] {
    fn from(j: IndexInterval) -> Self {
        [j.left, j.right]
    }
}

impl TryFrom<[usize; 2]> for IndexInterval {
    type Error = Error;

    fn try_from([l, r]: [usize; 2]) -> Result<Self> {
        Self::new(l, r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    #[serde(flatten)]
    pub interval: Interval,
    pub n: usize,
    pub pair_count: u64,
    pub r_value: f64,
}

/// Number of ordered pairs `(i, j)`, `i ≠ j`, among the first `n` terms with
/// `λ_j − λ_i ∈ I`.
///
/// Symmetric pairs are both counted, so an interval straddling 0 sees each
/// unordered pair twice.
pub fn pair_count(seq: &RealSequence, interval: &Interval, n: usize) -> Result<u64> {
    if n == 0 || n > seq.len() {
        return Err(Error::PrefixOutOfRange {
            n,
            available: seq.len(),
        });
    }
    if interval.is_empty() {
        return Ok(0);
    }
    let v = &seq.values()[..n];
    // For row i: j in [first, past) is exactly the set with v[j] − v[i] ∈ I.
    let mut first = 0usize;
    let mut past = 0usize;
    let mut count = 0u64;
    for i in 0..n {
        let vi = v[i];
        while first < n && !interval.above_lo(v[first] - vi) {
            first += 1;
        }
        if past < first {
            past = first;
        }
        while past < n && interval.below_hi(v[past] - vi) {
            past += 1;
        }
        if past > first {
            count += (past - first) as u64;
            if first <= i && i < past {
                count -= 1;
            }
        }
    }
    Ok(count)
}

/// `R(I, n) = pair_count / n`.
pub fn pair_correlation(seq: &RealSequence, interval: &Interval, n: usize) -> Result<CorrelationReport> {
    let pair_count = pair_count(seq, interval, n)?;
    Ok(CorrelationReport {
        interval: *interval,
        n,
        pair_count,
        r_value: pair_count as f64 / n as f64,
    })
}

/// Evaluates many intervals over the same prefix in parallel.
pub fn pair_correlation_batch(seq: &RealSequence, intervals: &[Interval], n: usize) -> Result<Vec<CorrelationReport>> {
    intervals.par_iter().map(|i| pair_correlation(seq, i, n)).collect()
}

/// `#{m ≤ n : g_m ≤ x}`.
pub fn gap_count_le(g: &GapSequence, x: f64, n: usize) -> Result<usize> {
    g.check_prefix(n)?;
    Ok(g.gaps()[..n].iter().filter(|&&gm| gm <= x).count())
}

/// Empirical gap distribution function `(1/n)·#{m ≤ n : g_m ≤ x}`.
pub fn gap_cdf(g: &GapSequence, x: f64, n: usize) -> Result<f64> {
    Ok(gap_count_le(g, x, n)? as f64 / n as f64)
}

/// Number of windows `(start, m)` with `m ≥ m_min`, `start + m − 1 ≤ n`, and
/// `g_start + … + g_{start+m−1} ∈ I`.
pub fn multi_gap_count(g: &GapSequence, interval: &Interval, n: usize, m_min: usize) -> Result<u64> {
    g.check_prefix(n)?;
    if m_min == 0 {
        return Err(Error::InvalidConfig("m_min must be at least 1".into()));
    }
    if interval.is_empty() {
        return Ok(0);
    }
    // For start s: ends e in [first, past) have window sum in I.
    let mut first = 1usize;
    let mut past = 1usize;
    let mut count = 0u64;
    for s in 1..=n {
        first = first.max(s);
        while first <= n && !interval.above_lo(g.window_sum(s, first)) {
            first += 1;
        }
        past = past.max(first);
        while past <= n && interval.below_hi(g.window_sum(s, past)) {
            past += 1;
        }
        let lowest = first.max(s + m_min - 1);
        if past > lowest {
            count += (past - lowest) as u64;
        }
    }
    Ok(count)
}

fn check_block(g: &GapSequence, j: &IndexInterval) -> Result<()> {
    if j.right() > g.len() {
        return Err(Error::PrefixOutOfRange {
            n: j.right(),
            available: g.len(),
        });
    }
    Ok(())
}

/// Pairs `n ≤ n'` in `J` with `g_n + … + g_{n'} < a`.
pub fn ppc_block(g: &GapSequence, j: &IndexInterval, a: f64) -> Result<u64> {
    check_block(g, j)?;
    let right = j.right();
    let mut past = j.left();
    let mut count = 0u64;
    for n in j.indices() {
        past = past.max(n);
        while past <= right && g.window_sum(n, past) < a {
            past += 1;
        }
        count += (past - n) as u64;
    }
    Ok(count)
}

// Pairs (n, n') ∈ J1 × J2 whose window sum satisfies `inside`, which must
// be downward closed (true on an initial segment of window sums).
fn cross_count(g: &GapSequence, j1: &IndexInterval, j2: &IndexInterval, inside: impl Fn(f64) -> bool) -> Result<u64> {
    if j1.right() >= j2.left() {
        return Err(Error::BlocksMisordered {
            first: (j1.left(), j1.right()),
            second: (j2.left(), j2.right()),
        });
    }
    check_block(g, j2)?;
    let (lo2, hi2) = (j2.left(), j2.right());
    let mut past = lo2;
    let mut count = 0u64;
    for n in j1.indices() {
        while past <= hi2 && inside(g.window_sum(n, past)) {
            past += 1;
        }
        count += (past - lo2) as u64;
    }
    Ok(count)
}

/// Pairs `(n, n') ∈ J₁ × J₂` with `g_n + … + g_{n'} < a`.
pub fn ppc_cross(g: &GapSequence, j1: &IndexInterval, j2: &IndexInterval, a: f64) -> Result<u64> {
    cross_count(g, j1, j2, |w| w < a)
}

/// Pairs `(n, n') ∈ J₁ × J₂` with `g_n + … + g_{n'} > x`.
pub fn cross_count_above(g: &GapSequence, j1: &IndexInterval, j2: &IndexInterval, x: f64) -> Result<u64> {
    let le = cross_count(g, j1, j2, |w| w <= x)?;
    Ok((j1.len() * j2.len()) as u64 - le)
}
