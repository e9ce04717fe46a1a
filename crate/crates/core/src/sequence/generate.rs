use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::{normalize_values, RealSequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// i.i.d. exponential gaps with mean 1.
    Poisson,
    /// Exponential gaps rejection-resampled into `(0, cap]`, then rescaled
    /// to mean gap 1.
    Capped,
    /// Sorted values of `x² + α·y²` over positive integers, normalized.
    QuadraticForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub n_points: usize,
    pub seed: u64,
    /// Gap cap for [`GeneratorKind::Capped`], in units of the raw mean-1 gap.
    pub cap: f64,
    /// Coefficient for [`GeneratorKind::QuadraticForm`].
    pub alpha: f64,
    /// Optional value cutoff for [`GeneratorKind::QuadraticForm`]. When set,
    /// every form value up to the cutoff is generated and the mean-gap
    /// normalization is taken over that whole range before truncating to
    /// `n_points`. When unset, the smallest cutoff yielding `n_points`
    /// values is used.
    pub cutoff: Option<f64>,
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, n_points: usize, seed: u64) -> Self {
        Self {
            kind,
            n_points,
            seed,
            cap: 1.5 + 1e-9,
            alpha: std::f64::consts::SQRT_2,
            cutoff: None,
        }
    }

    pub fn with_cap(mut self, cap: f64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_cutoff(mut self, cutoff: Option<f64>) -> Self {
        self.cutoff = cutoff;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_points == 0 {
            return Err(Error::InvalidConfig("n_points must be at least 1".into()));
        }
        match self.kind {
            GeneratorKind::Capped if !(self.cap > 0.0 && self.cap.is_finite()) => {
                Err(Error::InvalidConfig(format!("cap must be positive, got {}", self.cap)))
            }
            GeneratorKind::QuadraticForm if !(self.alpha > 0.0 && self.alpha.is_finite()) => Err(Error::InvalidConfig(
                format!("alpha must be positive, got {}", self.alpha),
            )),
            _ => Ok(()),
        }
    }
}

/// Generator output together with the bookkeeping needed to interpret it.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub sequence: RealSequence,
    /// Factor applied to raw values by the final renormalization (1 when none).
    pub scale: f64,
    /// Number of exact ties nudged upward to restore strict increase.
    pub perturbed_ties: usize,
}

pub fn generate(cfg: &GeneratorConfig) -> Result<RealSequence> {
    generate_with_meta(cfg).map(|g| g.sequence)
}

pub fn generate_with_meta(cfg: &GeneratorConfig) -> Result<Generated> {
    cfg.validate()?;
    match cfg.kind {
        GeneratorKind::Poisson => poisson(cfg),
        GeneratorKind::Capped => capped(cfg),
        GeneratorKind::QuadraticForm => quadratic_form(cfg),
    }
}

// Running sums of drawn gaps. A draw too small to change the running value
// is discarded and redrawn.
fn accumulate<R: Rng>(rng: &mut R, n: usize, mut draw: impl FnMut(&mut R) -> f64) -> Vec<f64> {
    let mut values = Vec::with_capacity(n);
    let mut last = 0.0f64;
    while values.len() < n {
        let next = last + draw(rng);
        if next > last {
            values.push(next);
            last = next;
        }
    }
    values
}

fn poisson(cfg: &GeneratorConfig) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let values = accumulate(&mut rng, cfg.n_points, |r| r.sample::<f64, _>(Exp1));
    Ok(Generated {
        sequence: RealSequence::new(values)?,
        scale: 1.0,
        perturbed_ties: 0,
    })
}

fn capped(cfg: &GeneratorConfig) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = cfg.cap;
    let raw = accumulate(&mut rng, cfg.n_points, |r| loop {
        let g: f64 = r.sample(Exp1);
        if g > 0.0 && g <= cap {
            break g;
        }
    });
    let n = raw.len();
    if n < 2 {
        return Ok(Generated {
            sequence: RealSequence::new(raw)?,
            scale: 1.0,
            perturbed_ties: 0,
        });
    }
    let mean = (raw[n - 1] - raw[0]) / (n - 1) as f64;
    let scale = 1.0 / mean;
    let values = raw.iter().map(|v| v * scale).collect();
    Ok(Generated {
        sequence: RealSequence::new(values)?,
        scale,
        perturbed_ties: 0,
    })
}

/// The `n` smallest values of `x² + α·y²` with `x, y ≥ 1`, sorted, ties kept.
///
/// With `cutoff`, returns every value `≤ cutoff` instead (possibly fewer or
/// more than `n`).
pub fn quadratic_form_raw(n: usize, alpha: f64, cutoff: Option<f64>) -> Vec<f64> {
    let cutoff = cutoff.unwrap_or_else(|| minimal_cutoff(n, alpha));
    let mut values = Vec::new();
    let mut x = 1u64;
    loop {
        let xx = (x * x) as f64;
        if xx + alpha > cutoff {
            break;
        }
        let mut y = 1u64;
        loop {
            let v = xx + alpha * (y * y) as f64;
            if v > cutoff {
                break;
            }
            values.push(v);
            y += 1;
        }
        x += 1;
    }
    values.sort_by(f64::total_cmp);
    values
}

fn count_below(cutoff: f64, alpha: f64) -> usize {
    let mut count = 0usize;
    let mut x = 1u64;
    loop {
        let xx = (x * x) as f64;
        if xx + alpha > cutoff {
            return count;
        }
        let mut y = 1u64;
        while xx + alpha * (y * y) as f64 <= cutoff {
            count += 1;
            y += 1;
        }
        x += 1;
    }
}

// Smallest cutoff (among values taken by the form) that admits `n` values.
// Grows geometrically, then bisects on the value count.
fn minimal_cutoff(n: usize, alpha: f64) -> f64 {
    let mut hi = 1.0 + alpha;
    while count_below(hi, alpha) < n {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid, alpha) >= n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn quadratic_form(cfg: &GeneratorConfig) -> Result<Generated> {
    let n = cfg.n_points;
    let raw = quadratic_form_raw(n, cfg.alpha, cfg.cutoff);
    if raw.len() < n {
        return Err(Error::InvalidConfig(format!(
            "cutoff admits only {} values, {} requested",
            raw.len(),
            n
        )));
    }
    if n == 1 {
        return Ok(Generated {
            sequence: RealSequence::new(vec![0.0])?,
            scale: 1.0,
            perturbed_ties: 0,
        });
    }
    // Normalization is taken over every generated value, then truncated.
    let scale = (raw.len() - 1) as f64 / (raw[raw.len() - 1] - raw[0]);
    let mut values = normalize_values(&raw)?;
    values.truncate(n);
    let perturbed_ties = break_ties(&mut values);
    Ok(Generated {
        sequence: RealSequence::new(values)?,
        scale,
        perturbed_ties,
    })
}

// Replaces every value that does not exceed its predecessor with the next
// representable value above the predecessor.
fn break_ties(values: &mut [f64]) -> usize {
    let mut count = 0;
    for i in 1..values.len() {
        if values[i] <= values[i - 1] {
            values[i] = values[i - 1].next_up();
            count += 1;
        }
    }
    count
}
