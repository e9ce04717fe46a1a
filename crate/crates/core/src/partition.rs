//! Maximal low-gap blocks and their longest-first greedy decomposition.
//!
//! Within a block every gap is at most the threshold. The greedy procedure
//! repeatedly removes the longest contiguous run of still-unclaimed indices
//! whose gap sum is at most the budget, until the block is exhausted. Parts
//! are then renumbered left to right; `ranks[k]` remembers when part `k`
//! was picked.
//!
//! Part indices `k` are 1-based throughout, like gap indices.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::correlation::{cross_count_above, IndexInterval};
use crate::error::{Error, Result};
use crate::sequence::GapSequence;

/// Maximal runs of indices `≤ n` whose gaps are all `≤ threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSet {
    pub blocks: Vec<IndexInterval>,
    pub threshold: f64,
    pub n: usize,
}

impl BlockSet {
    /// `Σ |I|` over blocks.
    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(IndexInterval::len).sum()
    }

    /// `Σ C(|I| + 1, 2)` over blocks: the number of windows inside blocks.
    pub fn window_capacity(&self) -> u64 {
        self.blocks.iter().map(|b| triangular(b.len())).sum()
    }
}

pub(crate) fn triangular(len: usize) -> u64 {
    let l = len as u64;
    l * (l + 1) / 2
}

pub fn maximal_blocks(g: &GapSequence, n: usize, threshold: f64) -> Result<BlockSet> {
    g.check_prefix(n)?;
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let mut blocks = Vec::new();
    let mut start: Option<usize> = None;
    for i in 1..=n {
        let low = g.gap(i) <= threshold;
        match (low, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                blocks.push(IndexInterval::new_unchecked(s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        blocks.push(IndexInterval::new_unchecked(s, n));
    }
    Ok(BlockSet { blocks, threshold, n })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyPartition {
    pub parent: IndexInterval,
    /// Parts `J_1 … J_s` in left-to-right order.
    pub parts: Vec<IndexInterval>,
    /// `ranks[k − 1]` is the (1-based) pick order of part `k`.
    pub ranks: Vec<usize>,
    /// `summ(J_k)` as evaluated during selection.
    pub sums: Vec<f64>,
    pub budget: f64,
}

impl GreedyPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, k: usize) -> IndexInterval {
        self.parts[k - 1]
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k - 1]
    }

    /// Part containing gap index `i`, if `i` is in the parent.
    pub fn part_of(&self, i: usize) -> Option<usize> {
        if !self.parent.contains(i) {
            return None;
        }
        let pos = self.parts.partition_point(|p| p.right() < i);
        Some(pos + 1)
    }

    /// Of two parts, the one picked later.
    pub fn later_of(&self, k1: usize, k2: usize) -> usize {
        if self.rank(k1) > self.rank(k2) {
            k1
        } else {
            k2
        }
    }

    /// `Σ_k C(|J_k| + 1, 2)`.
    pub fn window_capacity(&self) -> u64 {
        self.parts.iter().map(|p| triangular(p.len())).sum()
    }

    /// Parts in the order they were picked.
    pub fn pick_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (k, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = k + 1;
        }
        order
    }
}

// A maximal run of unclaimed indices with its best candidate window.
#[derive(Debug, Clone, Copy)]
struct Fragment {
    left: usize,
    right: usize,
    best: (usize, usize),
}

impl Fragment {
    fn new(g: &GapSequence, left: usize, right: usize, budget: f64) -> Self {
        Self {
            left,
            right,
            best: longest_window(g, left, right, budget),
        }
    }

    fn best_len(&self) -> usize {
        self.best.1 - self.best.0 + 1
    }
}

/// Longest `[l, r] ⊆ [left, right]` with window sum `≤ budget`; among equal
/// lengths the smallest `l`. Every single gap must already be `≤ budget`.
fn longest_window(g: &GapSequence, left: usize, right: usize, budget: f64) -> (usize, usize) {
    let mut best = (left, left);
    let mut r = left;
    for l in left..=right {
        r = r.max(l);
        while r < right && g.window_sum(l, r + 1) <= budget {
            r += 1;
        }
        if r - l > best.1 - best.0 {
            best = (l, r);
        }
        if r == right {
            break;
        }
    }
    best
}

/// Longest-first greedy decomposition of `parent`.
///
/// Ties between equally long candidates go to the smallest left endpoint.
pub fn greedy_partition(g: &GapSequence, parent: &IndexInterval, budget: f64) -> Result<GreedyPartition> {
    if parent.right() > g.len() {
        return Err(Error::PrefixOutOfRange {
            n: parent.right(),
            available: g.len(),
        });
    }
    if budget.is_nan() || budget <= 0.0 {
        return Err(Error::InvalidConfig(format!("budget must be positive, got {budget}")));
    }
    if let Some(i) = parent.indices().find(|&i| g.gap(i) > budget) {
        return Err(Error::UnpartitionableSingleton {
            index: i,
            value: g.gap(i),
            budget,
        });
    }

    let mut fragments = vec![Fragment::new(g, parent.left(), parent.right(), budget)];
    let mut picks: Vec<(usize, usize)> = Vec::new();
    while !fragments.is_empty() {
        // Fragments stay sorted left to right, so a strict comparison keeps
        // the leftmost candidate among the longest.
        let mut pos = 0;
        for (i, f) in fragments.iter().enumerate().skip(1) {
            if f.best_len() > fragments[pos].best_len() {
                pos = i;
            }
        }
        let f = fragments.remove(pos);
        let (l, r) = f.best;
        picks.push((l, r));
        let mut at = pos;
        if f.left < l {
            fragments.insert(at, Fragment::new(g, f.left, l - 1, budget));
            at += 1;
        }
        if r < f.right {
            fragments.insert(at, Fragment::new(g, r + 1, f.right, budget));
        }
    }

    let mut order: Vec<usize> = (0..picks.len()).collect();
    order.sort_by_key(|&i| picks[i].0);
    let parts: Vec<IndexInterval> = order
        .iter()
        .map(|&i| IndexInterval::new_unchecked(picks[i].0, picks[i].1))
        .collect();
    let ranks = order.iter().map(|&i| i + 1).collect();
    let sums = parts.iter().map(|p| g.window_sum(p.left(), p.right())).collect();
    Ok(GreedyPartition {
        parent: *parent,
        parts,
        ranks,
        sums,
        budget,
    })
}

/// Parts `k ∈ [2, s − 1]` picked after both neighbours.
pub fn sandwiched_indices(p: &GreedyPartition) -> BTreeSet<usize> {
    let s = p.len();
    (2..s)
        .filter(|&k| p.rank(k) > p.rank(k - 1) && p.rank(k) > p.rank(k + 1))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    /// Both indices in the same part.
    SameBlock,
    /// Indices in neighbouring parts `J_k`, `J_{k+1}`.
    Adjacent,
    /// Indices in `J_{k−1}`, `J_{k+1}` around a sandwiched `k`.
    SandwichSkip,
    /// Window sum exceeds the budget.
    Outside,
}

/// Which of the trichotomy cases the pair `n ≤ n2` falls into.
///
/// A pair with window sum within budget that fits none of the three cases
/// is reported as [`Error::TrichotomyViolation`]; the greedy construction
/// rules this out.
pub fn classify_pair(p: &GreedyPartition, g: &GapSequence, n: usize, n2: usize, budget: f64) -> Result<PairClass> {
    let (left, right) = (p.parent.left(), p.parent.right());
    for i in [n, n2] {
        if !p.parent.contains(i) {
            return Err(Error::IndexOutsideParent { index: i, left, right });
        }
    }
    if n > n2 {
        return Err(Error::InvalidIndexInterval { left: n, right: n2 });
    }
    if g.window_sum(n, n2) > budget {
        return Ok(PairClass::Outside);
    }
    let k1 = p.part_of(n).expect("index inside parent");
    let k2 = p.part_of(n2).expect("index inside parent");
    match k2 - k1 {
        0 => Ok(PairClass::SameBlock),
        1 => Ok(PairClass::Adjacent),
        2 if sandwiched_indices(p).contains(&(k1 + 1)) => Ok(PairClass::SandwichSkip),
        _ => Err(Error::TrichotomyViolation { n, n2, k1, k2 }),
    }
}

/// One cross-term comparison: `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub k: usize,
    pub lhs: u64,
    pub rhs: f64,
    pub ok: bool,
}

/// Adjacent parts `J_k`, `J_{k+1}`: the number of cross windows with sum
/// above the budget is at least `½·|J_later|²`, where `J_later` is whichever
/// of the two was picked second.
pub fn verify_adjacent_bound(p: &GreedyPartition, g: &GapSequence, k: usize, budget: f64) -> Result<BoundCheck> {
    let s = p.len();
    if k == 0 || k + 1 > s {
        return Err(Error::PartOutOfRange { k, parts: s });
    }
    let lhs = cross_count_above(g, &p.part(k), &p.part(k + 1), budget)?;
    let later = p.part(p.later_of(k, k + 1)).len() as f64;
    let rhs = 0.5 * later * later;
    Ok(BoundCheck {
        k,
        lhs,
        rhs,
        ok: lhs as f64 >= rhs,
    })
}

/// Sandwiched `k`: the number of windows from `J_{k−1}` to `J_{k+1}` with sum
/// above the budget is at least `½·|J_later|²` for the later-picked of the
/// two outer parts.
pub fn verify_sandwich_bound(p: &GreedyPartition, g: &GapSequence, k: usize, budget: f64) -> Result<BoundCheck> {
    if !sandwiched_indices(p).contains(&k) {
        return Err(Error::NotSandwiched(k));
    }
    let lhs = cross_count_above(g, &p.part(k - 1), &p.part(k + 1), budget)?;
    let later = p.part(p.later_of(k - 1, k + 1)).len() as f64;
    let rhs = 0.5 * later * later;
    Ok(BoundCheck {
        k,
        lhs,
        rhs,
        ok: lhs as f64 >= rhs,
    })
}

/// Every adjacent and sandwich bound of one partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionCheck {
    pub adjacent: Vec<BoundCheck>,
    pub sandwich: Vec<BoundCheck>,
    pub ok: bool,
}

pub fn check_partition(p: &GreedyPartition, g: &GapSequence) -> Result<PartitionCheck> {
    let adjacent = (1..p.len())
        .map(|k| verify_adjacent_bound(p, g, k, p.budget))
        .collect::<Result<Vec<_>>>()?;
    let sandwich = sandwiched_indices(p)
        .into_iter()
        .map(|k| verify_sandwich_bound(p, g, k, p.budget))
        .collect::<Result<Vec<_>>>()?;
    let ok = adjacent.iter().chain(&sandwich).all(|c| c.ok);
    Ok(PartitionCheck { adjacent, sandwich, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaps(v: &[f64]) -> GapSequence {
        GapSequence::new(v.to_vec()).unwrap()
    }

    fn ij(l: usize, r: usize) -> IndexInterval {
        IndexInterval::new(l, r).unwrap()
    }

    fn fake(parts: &[(usize, usize)], ranks: &[usize]) -> GreedyPartition {
        let parts: Vec<_> = parts.iter().map(|&(l, r)| ij(l, r)).collect();
        GreedyPartition {
            parent: ij(parts[0].left(), parts.last().unwrap().right()),
            sums: vec![0.0; parts.len()],
            parts,
            ranks: ranks.to_vec(),
            budget: 0.5,
        }
    }

    #[test]
    fn blocks_from_definition() {
        let g = gaps(&[0.6, 0.3, 0.4, 0.7, 0.2]);
        let b = maximal_blocks(&g, 5, 0.5).unwrap();
        assert_eq!(b.blocks, vec![ij(2, 3), ij(5, 5)]);
        assert_eq!(b.total_len(), 3);
    }

    #[test]
    fn no_blocks_when_all_gaps_large() {
        let g = gaps(&[0.6, 0.9, 1.2]);
        assert!(maximal_blocks(&g, 3, 0.5).unwrap().blocks.is_empty());
    }

    #[test]
    fn blocks_respect_prefix() {
        let g = gaps(&[0.1, 0.2, 0.9, 0.1]);
        assert_eq!(maximal_blocks(&g, 2, 0.5).unwrap().blocks, vec![ij(1, 2)]);
        assert!(maximal_blocks(&g, 5, 0.5).is_err());
    }

    #[test]
    fn first_example_division() {
        let d = 1e-9;
        let g = gaps(&[0.4, d, d, d, 1.0 / 3.0, d, d, d, 0.4]);
        let p = greedy_partition(&g, &ij(1, 9), 0.5).unwrap();
        assert_eq!(p.parts, vec![ij(1, 1), ij(2, 8), ij(9, 9)]);
        assert_eq!(p.rank(2), 1);
        assert!(sandwiched_indices(&p).is_empty());
    }

    #[test]
    fn first_example_with_literal_zeros() {
        let mut v = vec![0.4];
        v.extend([0.0; 20]);
        v.push(1.0 / 3.0);
        v.extend([0.0; 20]);
        v.push(0.4);
        let g = gaps(&v);
        let p = greedy_partition(&g, &ij(1, v.len()), 0.5).unwrap();
        assert_eq!(p.parts, vec![ij(1, 1), ij(2, 42), ij(43, 43)]);
    }

    #[test]
    fn failing_divisions_of_first_example_leak_cross_pairs() {
        // Left-to-right cutting, and letting large gaps claim first, both
        // leave many small-sum windows straddling parts.
        let d = 1e-9;
        let g = gaps(&[0.4, d, d, d, 1.0 / 3.0, d, d, d, 0.4]);
        let leaky = |cut: &[(usize, usize)]| -> u64 {
            let mut total = 0;
            for (i, a) in cut.iter().enumerate() {
                for b in &cut[i + 1..] {
                    let (a, b) = (ij(a.0, a.1), ij(b.0, b.1));
                    total += crate::correlation::ppc_cross(&g, &a, &b, 0.5).unwrap();
                }
            }
            total
        };
        let left_to_right = leaky(&[(1, 4), (5, 8), (9, 9)]);
        let claim_by_size = leaky(&[(1, 4), (5, 5), (6, 9)]);
        let greedy = leaky(&[(1, 1), (2, 8), (9, 9)]);
        assert!(left_to_right > greedy);
        assert!(claim_by_size > greedy);
        // Only windows touching one of the two 2/5 gaps leak: 3 on each side.
        assert_eq!(greedy, 6);
        assert_eq!((left_to_right, claim_by_size), (15, 15));
    }

    #[test]
    fn single_index_parent() {
        let g = gaps(&[0.4]);
        let p = greedy_partition(&g, &ij(1, 1), 0.5).unwrap();
        assert_eq!(p.parts, vec![ij(1, 1)]);
        assert_eq!(p.ranks, vec![1]);
    }

    #[test]
    fn singleton_parts_ranked_left_to_right() {
        let g = gaps(&[0.3, 0.3, 0.3]);
        let p = greedy_partition(&g, &ij(1, 3), 0.5).unwrap();
        assert_eq!(p.parts, vec![ij(1, 1), ij(2, 2), ij(3, 3)]);
        assert_eq!(p.ranks, vec![1, 2, 3]);
    }

    #[test]
    fn unpartitionable_singleton() {
        let g = gaps(&[0.3, 0.6]);
        assert!(matches!(
            greedy_partition(&g, &ij(1, 2), 0.5),
            Err(Error::UnpartitionableSingleton { index: 2, .. })
        ));
    }

    #[test]
    fn sandwiched_by_definition() {
        assert!(sandwiched_indices(&fake(&[(1, 1)], &[1])).is_empty());
        assert!(sandwiched_indices(&fake(&[(1, 1), (2, 2)], &[2, 1])).is_empty());
        let s: Vec<_> = sandwiched_indices(&fake(&[(1, 1), (2, 2), (3, 3)], &[1, 3, 2]))
            .into_iter()
            .collect();
        assert_eq!(s, vec![2]);
        assert!(sandwiched_indices(&fake(&[(1, 1), (2, 2), (3, 3)], &[2, 1, 3])).is_empty());
    }

    #[test]
    fn classify_examples() {
        let g = gaps(&[0.3, 0.1, 0.1, 0.3, 0.4]);
        let p = greedy_partition(&g, &ij(1, 5), 0.5).unwrap();
        // [1,3] sums to exactly 0.5 and wins the length-3 tie on the left.
        assert_eq!(p.parts, vec![ij(1, 3), ij(4, 4), ij(5, 5)]);
        assert_eq!(p.ranks, vec![1, 2, 3]);
        assert_eq!(classify_pair(&p, &g, 2, 3, 0.5).unwrap(), PairClass::SameBlock);
        assert_eq!(classify_pair(&p, &g, 3, 4, 0.5).unwrap(), PairClass::Adjacent);
        assert_eq!(classify_pair(&p, &g, 1, 5, 0.5).unwrap(), PairClass::Outside);
        assert!(matches!(
            classify_pair(&p, &g, 1, 6, 0.5),
            Err(Error::IndexOutsideParent { index: 6, .. })
        ));
    }

    #[test]
    fn sandwich_skip_case() {
        // Expensive middle gap: both outer runs of four are picked before it,
        // yet the window from the last index of the left part to the first
        // index of the right part stays within budget.
        let t = 0.004;
        let g = gaps(&[0.45, t, t, t, 0.49, t, t, t, 0.45]);
        let p = greedy_partition(&g, &ij(1, 9), 0.5).unwrap();
        assert_eq!(p.parts, vec![ij(1, 4), ij(5, 5), ij(6, 9)]);
        assert_eq!(p.ranks, vec![1, 3, 2]);
        assert_eq!(sandwiched_indices(&p).into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(classify_pair(&p, &g, 4, 6, 0.5).unwrap(), PairClass::SandwichSkip);
        assert_eq!(classify_pair(&p, &g, 3, 6, 0.5).unwrap(), PairClass::Outside);

        let c = verify_sandwich_bound(&p, &g, 2, 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs, c.ok), (15, 8.0, true));
    }

    #[test]
    fn trichotomy_violation_is_reported() {
        // Hand-built (non-greedy) partition whose outer parts are close.
        let g = gaps(&[0.1, 0.1, 0.1]);
        let p = fake(&[(1, 1), (2, 2), (3, 3)], &[1, 2, 3]);
        assert!(matches!(
            classify_pair(&p, &g, 1, 3, 0.5),
            Err(Error::TrichotomyViolation { k1: 1, k2: 3, .. })
        ));
    }

    #[test]
    fn adjacent_bound_singletons() {
        let g = gaps(&[0.3, 0.3, 0.3]);
        let p = greedy_partition(&g, &ij(1, 3), 0.5).unwrap();
        let c = verify_adjacent_bound(&p, &g, 1, 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs, c.ok), (1, 0.5, true));
        assert!(verify_adjacent_bound(&p, &g, 3, 0.5).is_err());
        assert!(verify_adjacent_bound(&p, &g, 0, 0.5).is_err());
    }

    #[test]
    fn bounds_vacuous_for_single_part() {
        let g = gaps(&[0.1, 0.1]);
        let p = greedy_partition(&g, &ij(1, 2), 0.5).unwrap();
        let c = check_partition(&p, &g).unwrap();
        assert!(c.adjacent.is_empty() && c.sandwich.is_empty() && c.ok);
        assert!(matches!(
            verify_sandwich_bound(&p, &g, 1, 0.5),
            Err(Error::NotSandwiched(1))
        ));
    }
}
