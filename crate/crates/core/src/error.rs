use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sequence too short: need at least {needed} values, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("sequence not strictly increasing at index {index}: {prev} >= {next}")]
    NotIncreasing { index: usize, prev: f64, next: f64 },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("degenerate sequence: all values equal")]
    DegenerateSequence,

    #[error("invalid gap at index {index}: {value}")]
    InvalidGap { index: usize, value: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid index interval [{left}, {right}]")]
    InvalidIndexInterval { left: usize, right: usize },

    #[error("prefix length {n} out of range (available {available})")]
    PrefixOutOfRange { n: usize, available: usize },

    #[error("blocks overlap or are misordered: [{}, {}] then [{}, {}]", .first.0, .first.1, .second.0, .second.1)]
    BlocksMisordered {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("unpartitionable singleton: gap {value} at index {index} exceeds budget {budget}")]
    UnpartitionableSingleton { index: usize, value: f64, budget: f64 },

    #[error("index {index} outside parent [{left}, {right}]")]
    IndexOutsideParent { index: usize, left: usize, right: usize },

    #[error(
        "pair ({n}, {n2}) with window sum within budget lies in parts {k1} and {k2}, outside every trichotomy case"
    )]
    TrichotomyViolation { n: usize, n2: usize, k1: usize, k2: usize },

    #[error("part index {k} out of range (parts: {parts})")]
    PartOutOfRange { k: usize, parts: usize },

    #[error("part {0} is not sandwiched")]
    NotSandwiched(usize),

    #[error("lemma point violates 1 <= a <= b <= c <= L: ({a}, {b}, {c}, {l})")]
    InvalidLemmaPoint { a: f64, b: f64, c: f64, l: f64 },

    #[error("block gap sum {0} exceeds 1/2")]
    BlockSumTooLarge(f64),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
