//! Executable forms of the quantitative inequalities and the finite-N audit.

mod audit;
mod bias;
mod lemma;

pub use audit::{audit, AuditConfig, AuditReport, Relation, StepFlag};
pub use bias::{
    bias_check, bias_random_suite, bias_rhs, random_bias_block, BiasCheck, BiasSuite, BiasViolation, EIGHTH, QUARTER,
};
pub use lemma::{
    lemma512_exhaustive, lemma512_gap, lemma512_lhs, lemma512_lhs_exact, lemma512_random_real, lemma512_rhs,
    lemma512_rhs_twelfths, tuple_count, ExhaustiveResult, LemmaPoint, RealCounterexample, REAL_TOLERANCE,
};

/// `f(ε) = (10√2/3)·ε^{1/4} + (5/3)·ε^{1/2} − 1/24`.
///
/// A negative value means the limiting inequality fails, so no sequence can
/// have maximum gap `3/2 + ε`.
pub fn final_inequality(epsilon: f64) -> f64 {
    10.0 * std::f64::consts::SQRT_2 / 3.0 * epsilon.powf(0.25) + 5.0 / 3.0 * epsilon.sqrt() - 1.0 / 24.0
}
