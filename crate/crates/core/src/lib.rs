//! Counting machinery for real sequences with mean gap 1.
//!
//! The crate is organised around a small number of pieces:
//!
//! - [`sequence`]: strictly increasing sequences, their gaps, normalization,
//!   seeded generators and the plain-text sequence file format.
//! - [`correlation`]: the pair-correlation count `R(I, N)`, the gap CDF,
//!   multi-gap window counts and block-restricted window counts.
//! - [`partition`]: maximal low-gap blocks, the longest-first greedy
//!   decomposition of a block, sandwiched parts and cross-term checks.
//! - [`verifier`]: executable forms of the quantitative inequalities
//!   (the 5/12 lemma, the bias-near-zero bound, the final epsilon
//!   inequality) and a finite-N audit of the whole argument.
//!
//! All window sums over a [`GapSequence`] go through one prefix-sum table,
//! so every count in the crate agrees exactly with every other count that
//! looks at the same window.

pub mod correlation;
pub mod error;
pub mod partition;
pub mod sequence;
pub mod verifier;

pub use correlation::{CorrelationReport, IndexInterval, Interval};
pub use error::{Error, Result};
pub use partition::{BlockSet, GreedyPartition, PairClass};
pub use sequence::{GapSequence, GeneratorConfig, GeneratorKind, RealSequence, UnfoldMode};
pub use verifier::{AuditConfig, AuditReport, LemmaPoint};
