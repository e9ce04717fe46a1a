//! Windows of a block with total gap at most 1/2 are biased toward small
//! sums: counting windows `≤ 1/4` plus windows `≤ 1/8` gives at least
//! `(5/6)·C(L+1, 2) − (5/6)·L`, against `(3/8)·C(L+1, 2)` for a uniform
//! spread.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::correlation::{multi_gap_count, Interval};
use crate::error::{Error, Result};
use crate::sequence::GapSequence;

pub const QUARTER: f64 = 0.25;
pub const EIGHTH: f64 = 0.125;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasCheck {
    pub len: usize,
    pub count_quarter: u64,
    pub count_eighth: u64,
    pub lhs: u64,
    pub rhs: f64,
    pub ok: bool,
}

/// `(5/6)·L(L+1)/2 − (5/6)·L`.
pub fn bias_rhs(len: usize) -> f64 {
    let l = len as f64;
    5.0 / 6.0 * (l * (l + 1.0) / 2.0) - 5.0 / 6.0 * l
}

/// Counts all windows of the block with sum `≤ 1/4` and with sum `≤ 1/8`.
///
/// With `strict_scale`, gaps are first rescaled so their total is 1/2, the
/// extremal case; without it the block is taken as given.
pub fn bias_check(g: &GapSequence, strict_scale: bool) -> Result<BiasCheck> {
    let total = g.total();
    if total > 0.5 {
        return Err(Error::BlockSumTooLarge(total));
    }
    let scaled;
    let g = if strict_scale && total > 0.0 {
        let f = 0.5 / total;
        scaled = GapSequence::new(g.gaps().iter().map(|x| x * f).collect())?;
        &scaled
    } else {
        g
    };
    let len = g.len();
    let count_quarter = multi_gap_count(g, &Interval::closed(0.0, QUARTER)?, len, 1)?;
    let count_eighth = multi_gap_count(g, &Interval::closed(0.0, EIGHTH)?, len, 1)?;
    let lhs = count_quarter + count_eighth;
    let rhs = bias_rhs(len);
    Ok(BiasCheck {
        len,
        count_quarter,
        count_eighth,
        lhs,
        rhs,
        ok: lhs as f64 >= rhs,
    })
}

/// A random block: length uniform on `1..=max_len`, raw gaps uniform on
/// `(0, 1)`, rescaled to a total drawn uniformly from `(0, 1/2]`.
pub fn random_bias_block<R: Rng>(rng: &mut R, max_len: usize) -> Vec<f64> {
    let len = rng.random_range(1..=max_len.max(1));
    let mut gaps: Vec<f64> = (0..len).map(|_| 1.0 - rng.random::<f64>()).collect();
    let target = 0.5 * (1.0 - rng.random::<f64>());
    let raw: f64 = gaps.iter().sum();
    let f = target / raw;
    for x in gaps.iter_mut() {
        *x *= f;
    }
    // Rescaling can overshoot 1/2 by an ulp or two.
    while GapSequence::new(gaps.clone()).is_ok_and(|g| g.total() > 0.5) {
        for x in gaps.iter_mut() {
            *x *= 1.0 - f64::EPSILON;
        }
    }
    gaps
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasViolation {
    pub gaps: Vec<f64>,
    pub check: BiasCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasSuite {
    pub samples: u64,
    pub max_len: usize,
    pub seed: u64,
    pub violations: Vec<BiasViolation>,
}

pub fn bias_random_suite(samples: u64, seed: u64, max_len: usize, strict_scale: bool) -> Result<BiasSuite> {
    if max_len == 0 {
        return Err(Error::InvalidConfig("max_len must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let gaps = random_bias_block(&mut rng, max_len);
        let check = bias_check(&GapSequence::new(gaps.clone())?, strict_scale)?;
        if !check.ok {
            violations.push(BiasViolation { gaps, check });
        }
    }
    Ok(BiasSuite {
        samples,
        max_len,
        seed,
        violations,
    })
}
