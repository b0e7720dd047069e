use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("generator count {0} exceeds the supported maximum of {max}", max = crate::grassmann::MAX_GENERATORS)]
    TooManyGenerators(usize),

    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("expected {expected} element, got {got}")]
    Parity { expected: &'static str, got: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("grading violation at ({row}, {col}): entry must be {expected}")]
    Grading {
        row: usize,
        col: usize,
        expected: &'static str,
    },

    #[error("non-invertible body")]
    NonInvertibleBody,

    #[error("matrix is not odd-reduced")]
    NotOddReduced,

    #[error("elements carry different odd generators alpha")]
    MixedAlpha,

    #[error("band arity mismatch: ({0}|{0}) vs ({1}|{1})")]
    ArityMismatch(usize, usize),

    #[error("parameter lies in the region 1 + Ann alpha reserved for e")]
    ExcludedParameter,

    #[error("operation not defined for {0}")]
    WrongKind(String),

    #[error("heterogeneous element kinds: {0}")]
    HeterogeneousKinds(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("element set is not closed: {0}")]
    NotClosed(String),

    #[error("partitions are over different element lists ({0} vs {1} elements)")]
    PartitionMismatch(usize, usize),

    #[error("partition is not a congruence of the multiplication table")]
    NotCongruence,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
