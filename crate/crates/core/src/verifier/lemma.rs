//! The 5/12 lemma: for `1 ≤ a ≤ b ≤ c ≤ L`,
//!
//! ```text
//! (a−1)a + (b−a)(b−a+1) + (c−b)(c−b+1) + (L−c)(L−c+1)
//!   + (a−1)(b−a) + (b−a)(c−b) + (c−b)(L−c)  ≥  (5/12)L² + (1/6)L − 7/12
//! ```
//!
//! The integer sweep compares `12·LHS` against `5L² + 2L − 7` in `i64`, so
//! no rounding enters it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Real-valued rounding allowance used by the randomized check.
pub const REAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub l: f64,
}

impl LemmaPoint {
    pub fn new(a: f64, b: f64, c: f64, l: f64) -> Result<Self> {
        if !(1.0 <= a && a <= b && b <= c && c <= l) {
            return Err(Error::InvalidLemmaPoint { a, b, c, l });
        }
        Ok(Self { a, b, c, l })
    }

    /// The interior critical point `a = (L+2)/3, b = (L+1)/2, c = (2L+1)/3`
    /// where both `∂/∂a` and `∂/∂c` of `LHS − RHS` vanish and `b` minimizes.
    pub fn interior_critical(l: f64) -> Result<Self> {
        Self::new((l + 2.0) / 3.0, (l + 1.0) / 2.0, (2.0 * l + 1.0) / 3.0, l)
    }
}

fn lhs_terms(a: f64, b: f64, c: f64, l: f64) -> f64 {
    (a - 1.0) * a
        + (b - a) * (b - a + 1.0)
        + (c - b) * (c - b + 1.0)
        + (l - c) * (l - c + 1.0)
        + (a - 1.0) * (b - a)
        + (b - a) * (c - b)
        + (c - b) * (l - c)
}

pub fn lemma512_lhs(p: &LemmaPoint) -> f64 {
    lhs_terms(p.a, p.b, p.c, p.l)
}

pub fn lemma512_rhs(l: f64) -> f64 {
    5.0 / 12.0 * l * l + l / 6.0 - 7.0 / 12.0
}

/// `LHS − RHS`.
pub fn lemma512_gap(p: &LemmaPoint) -> f64 {
    lemma512_lhs(p) - lemma512_rhs(p.l)
}

/// Exact left-hand side for integer arguments.
pub fn lemma512_lhs_exact(a: i64, b: i64, c: i64, l: i64) -> Result<i64> {
    if !(1 <= a && a <= b && b <= c && c <= l) {
        return Err(Error::InvalidLemmaPoint {
            a: a as f64,
            b: b as f64,
            c: c as f64,
            l: l as f64,
        });
    }
    Ok(lhs_exact(a, b, c, l))
}

#[inline]
fn lhs_exact(a: i64, b: i64, c: i64, l: i64) -> i64 {
    (a - 1) * a
        + (b - a) * (b - a + 1)
        + (c - b) * (c - b + 1)
        + (l - c) * (l - c + 1)
        + (a - 1) * (b - a)
        + (b - a) * (c - b)
        + (c - b) * (l - c)
}

/// `12·RHS = 5L² + 2L − 7`.
pub fn lemma512_rhs_twelfths(l: i64) -> i64 {
    5 * l * l + 2 * l - 7
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveResult {
    pub l_max: u64,
    pub checked: u64,
    /// Violating `(a, b, c, L)` tuples, in lexicographic `(L, a, b, c)` order.
    pub counterexamples: Vec<[i64; 4]>,
}

/// Number of tuples `1 ≤ a ≤ b ≤ c ≤ L ≤ l_max`, which is `C(l_max + 3, 4)`.
pub fn tuple_count(l_max: u64) -> u64 {
    let n = l_max as u128;
    ((n * (n + 1) * (n + 2) * (n + 3)) / 24) as u64
}

/// Checks every integer tuple with `L ≤ l_max`, splitting the `L` range
/// across the rayon pool. Output does not depend on the worker count.
pub fn lemma512_exhaustive(l_max: u64) -> ExhaustiveResult {
    let per_l: Vec<(u64, Vec<[i64; 4]>)> = (1..=l_max as i64)
        .into_par_iter()
        .map(|l| {
            let rhs = lemma512_rhs_twelfths(l);
            let mut checked = 0u64;
            let mut bad = Vec::new();
            for a in 1..=l {
                for b in a..=l {
                    for c in b..=l {
                        checked += 1;
                        if 12 * lhs_exact(a, b, c, l) < rhs {
                            bad.push([a, b, c, l]);
                        }
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for (c, bad) in per_l {
        checked += c;
        counterexamples.extend(bad);
    }
    ExhaustiveResult {
        l_max,
        checked,
        counterexamples,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealCounterexample {
    pub point: LemmaPoint,
    pub gap: f64,
}

/// Draws `samples` real points: `L` uniform on `[1, l_max]`, then `a ≤ b ≤ c`
/// as the order statistics of three uniforms on `[1, L]`. Returns every
/// point whose gap is below `−REAL_TOLERANCE`.
pub fn lemma512_random_real(samples: u64, l_max: f64, seed: u64) -> Result<Vec<RealCounterexample>> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    if !(l_max >= 1.0 && l_max.is_finite()) {
        return Err(Error::InvalidConfig(format!("l_max must be ≥ 1, got {l_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let l = if l_max > 1.0 {
            rng.random_range(1.0..=l_max)
        } else {
            1.0
        };
        let mut abc = [0.0f64; 3];
        for x in abc.iter_mut() {
            *x = if l > 1.0 { rng.random_range(1.0..=l) } else { 1.0 };
        }
        abc.sort_by(f64::total_cmp);
        let point = LemmaPoint::new(abc[0], abc[1], abc[2], l)?;
        let gap = lemma512_gap(&point);
        if gap < -REAL_TOLERANCE {
            out.push(RealCounterexample { point, gap });
        }
    }
    Ok(out)
}
