use thiserror::Error;

/// Errors raised while validating inputs or running a solver.
///
/// Indices in messages are 1-based, matching the mathematical notation used
/// for weights `d_1, ..., d_{n-1}` and vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight list is empty")]
    EmptyWeights,
    #[error("weight {index} is not strictly positive ({value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("weight ratios overflow: |ln| of a mu/nu entry reaches {log_ratio:.1} (limit {limit})")]
    RatioOverflow { log_ratio: f64, limit: f64 },
    #[error("path has {n} vertices; the exact solver supports at most {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("{what} needs at most {max} vertices for explicit enumeration, got {n}")]
    EnumerationTooLarge { what: &'static str, n: usize, max: usize },
    #[error("index range [{a}, {b}] is outside 1..={len}")]
    IndexOutOfRange { a: usize, b: usize, len: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("diagonal entry {index} is nonzero")]
    NonZeroDiagonal { index: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("staircase entry {index} is zero; decompose into irreducible blocks first")]
    Reducible { index: usize },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices must be distinct (got {vertex} twice)")]
    SameVertex { vertex: usize },
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
