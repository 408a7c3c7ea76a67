use thiserror::Error;

use crate::verdict::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),

    #[error("exponent {exponent} is not an element of {context}")]
    InvalidExponent { exponent: String, context: String },

    #[error("invalid group context: {0}")]
    InvalidContext(String),

    #[error("zero-level complex not finitely supported")]
    ZeroLevelComplex,

    #[error("function has no value for coefficient {0}")]
    MissingFunctionValue(String),

    #[error("element {0} lies outside the partition universe")]
    OutsideUniverse(String),

    #[error("element is not a simple quantity")]
    NotSimple,

    #[error("element is not in the span of the partition")]
    NotInSpan,

    #[error("input span not Hadamard-closed: {0}")]
    NotHadamardClosed(String),

    #[error("product of classes {c} and {d} does not split: {detail}")]
    SplitFailure { c: usize, d: usize, detail: String },

    #[error("product of classes {c} and {d} escapes the represented universe")]
    ProductEscapesUniverse { c: usize, d: usize },

    #[error("class index {index} out of range (partition has {len} classes)")]
    ClassIndex { index: usize, len: usize },

    #[error("multiplier {multiplier} is not a unit mod {n}")]
    NonUnitMultiplier { multiplier: i64, n: i64 },

    #[error("trivial partition has infinite class")]
    InfiniteTrivialClass,

    #[error("tensor factors have orders {m} and {k}, which are not coprime")]
    TensorNotCoprime { m: i64, k: i64 },

    #[error("element is zero")]
    ZeroElement,

    #[error("subgroup generated by {0} is not an S-subgroup")]
    NotSSubgroup(String),

    #[error("not a Schur ring: {0}")]
    NotSchurRing(Violation),

    #[error("not a valid partition: {0}")]
    InvalidPartition(Violation),

    #[error("identity exponent 0 belongs to its own class")]
    IdentityInClass,

    #[error("class family is not closed under negation: {0}")]
    NotNegationClosed(String),

    #[error("a window declaration is required")]
    MissingWindow,

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
