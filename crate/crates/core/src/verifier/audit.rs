//! Finite-N evaluation of each step of the contradiction argument.
//!
//! Nothing here is asserted. The steps are asymptotic, so each comparison is
//! reported with its direction and signed margin.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::final_inequality;
use crate::correlation::{gap_cdf, multi_gap_count, ppc_block, Interval};
use crate::error::{Error, Result};
use crate::partition::{check_partition, greedy_partition, maximal_blocks};
use crate::sequence::{GapSequence, RealSequence};

use super::bias::{EIGHTH, QUARTER};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub epsilon: f64,
    /// Number of gaps audited; capped at `N − 1` for an `N`-point sequence.
    pub n: usize,
    #[serde(default = "default_budget")]
    pub budget: f64,
}

fn default_budget() -> f64 {
    0.5
}

impl AuditConfig {
    pub fn new(epsilon: f64, n: usize) -> Self {
        Self {
            epsilon,
            n,
            budget: default_budget(),
        }
    }

    pub fn with_budget(mut self, budget: f64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.budget > 0.0 && self.budget.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "budget must be positive, got {}",
                self.budget
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge => lhs - rhs,
        }
    }

    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepFlag {
    pub step: &'static str,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// Positive when the relation holds with room to spare.
    pub margin: f64,
    pub holds: bool,
}

impl StepFlag {
    fn new(step: &'static str, relation: Relation, lhs: f64, rhs: f64) -> Self {
        Self {
            step,
            relation,
            lhs,
            rhs,
            margin: relation.margin(lhs, rhs),
            holds: relation.holds(lhs, rhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub epsilon: f64,
    pub budget: f64,
    /// Gaps actually audited.
    pub n: usize,
    pub max_gap: f64,
    pub max_gap_cap: f64,
    /// Every audited gap is `≤ 3/2 + ε`. When false the argument's
    /// hypothesis fails and the remaining numbers are informational.
    pub max_gap_ok: bool,
    pub density_lhs: f64,
    pub density_rhs: f64,
    pub multigap_lhs: f64,
    pub multigap_rhs: f64,
    pub block_count: usize,
    /// `Σ|I|` over maximal blocks, which equals `Σ|J|` over all parts.
    pub block_len_total: usize,
    pub part_count: usize,
    pub partition_mass: f64,
    pub partition_mass_rhs: f64,
    /// Every adjacent and sandwich cross-term bound holds.
    pub partition_bounds_ok: bool,
    pub ppc_eighth: u64,
    pub ppc_quarter: u64,
    pub bias_lhs: f64,
    /// `(1/N) Σ_J (PPC^J(0,1/8) + PPC^J(0,1/4))`.
    pub bias_parts_lhs: f64,
    /// `(5/6)·(partition_mass − Σ|J|/N)`.
    pub bias_parts_rhs: f64,
    /// `(5/6)·partition_mass − (5/3)·Σ|J|/N`.
    pub bias_rhs: f64,
    /// `(5/6)(1/2 − 4√2 ε^{1/4}) − (5/3)√ε`.
    pub bias_limit_rhs: f64,
    pub final_ineq_value: f64,
    pub flags: Vec<StepFlag>,
}

struct BlockTally {
    parts: usize,
    capacity: u64,
    eighth: u64,
    quarter: u64,
    bounds_ok: bool,
}

pub fn audit(seq: &RealSequence, cfg: &AuditConfig) -> Result<AuditReport> {
    cfg.validate()?;
    if cfg.n > seq.len() {
        return Err(Error::PrefixOutOfRange {
            n: cfg.n,
            available: seq.len(),
        });
    }
    let all = seq.gaps()?;
    let n = cfg.n.min(all.len());
    let g = all.truncated(n)?;
    audit_gaps(&g, cfg)
}

fn audit_gaps(g: &GapSequence, cfg: &AuditConfig) -> Result<AuditReport> {
    let n = g.len();
    let nf = n as f64;
    let eps = cfg.epsilon;
    let root = eps.sqrt();
    let quartic = eps.powf(0.25);

    let max_gap = g.max_gap();
    let max_gap_cap = 1.5 + eps;

    let density_lhs = gap_cdf(g, 0.5, n)?;
    let density_rhs = 2.0 * root;
    let multigap_lhs = multi_gap_count(g, &Interval::open(0.5, max_gap_cap)?, n, 2)? as f64 / nf;
    let multigap_rhs = 2.0 * root;

    let blocks = maximal_blocks(g, n, cfg.budget)?;
    let tallies = blocks
        .blocks
        .par_iter()
        .map(|block| {
            let p = greedy_partition(g, block, cfg.budget)?;
            let mut eighth = 0;
            let mut quarter = 0;
            for j in &p.parts {
                eighth += ppc_block(g, j, EIGHTH)?;
                quarter += ppc_block(g, j, QUARTER)?;
            }
            Ok(BlockTally {
                parts: p.len(),
                capacity: p.window_capacity(),
                eighth,
                quarter,
                bounds_ok: check_partition(&p, g)?.ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let block_len_total = blocks.total_len();
    let part_count = tallies.iter().map(|t| t.parts).sum();
    let capacity: u64 = tallies.iter().map(|t| t.capacity).sum();
    let parts_ppc: u64 = tallies.iter().map(|t| t.eighth + t.quarter).sum();
    let partition_bounds_ok = tallies.iter().all(|t| t.bounds_ok);

    let partition_mass = capacity as f64 / nf;
    let partition_mass_rhs = 0.5 - 4.0 * std::f64::consts::SQRT_2 * quartic;

    let ppc_eighth = multi_gap_count(g, &Interval::half_open(0.0, EIGHTH)?, n, 1)?;
    let ppc_quarter = multi_gap_count(g, &Interval::half_open(0.0, QUARTER)?, n, 1)?;
    let bias_lhs = (ppc_eighth + ppc_quarter) as f64 / nf;
    let bias_parts_lhs = parts_ppc as f64 / nf;
    let len_share = block_len_total as f64 / nf;
    let bias_parts_rhs = 5.0 / 6.0 * (partition_mass - len_share);
    let bias_rhs = 5.0 / 6.0 * partition_mass - 5.0 / 3.0 * len_share;
    let bias_limit_rhs = 5.0 / 6.0 * partition_mass_rhs - 5.0 / 3.0 * root;
    let final_ineq_value = final_inequality(eps);

    let flags = vec![
        StepFlag::new("max_gap", Relation::Le, max_gap, max_gap_cap),
        StepFlag::new("density", Relation::Le, density_lhs, density_rhs),
        StepFlag::new("multigap", Relation::Le, multigap_lhs, multigap_rhs),
        StepFlag::new("partition_mass", Relation::Ge, partition_mass, partition_mass_rhs),
        StepFlag::new("bias_restrict", Relation::Ge, bias_lhs, bias_parts_lhs),
        StepFlag::new("bias_parts", Relation::Ge, bias_parts_lhs, bias_parts_rhs),
        StepFlag::new("bias", Relation::Ge, bias_lhs, bias_rhs),
        StepFlag::new("bias_limit", Relation::Ge, bias_lhs, bias_limit_rhs),
        StepFlag::new("final_inequality", Relation::Lt, final_ineq_value, 0.0),
    ];

    Ok(AuditReport {
        epsilon: eps,
        budget: cfg.budget,
        n,
        max_gap,
        max_gap_cap,
        max_gap_ok: max_gap <= max_gap_cap,
        density_lhs,
        density_rhs,
        multigap_lhs,
        multigap_rhs,
        block_count: blocks.blocks.len(),
        block_len_total,
        part_count,
        partition_mass,
        partition_mass_rhs,
        partition_bounds_ok,
        ppc_eighth,
        ppc_quarter,
        bias_lhs,
        bias_parts_lhs,
        bias_parts_rhs,
        bias_rhs,
        bias_limit_rhs,
        final_ineq_value,
        flags,
    })
}
