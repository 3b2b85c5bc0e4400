use std::fmt;

/// Errors reported by the cube, enumeration, model and analytics operations.
#[derive(Debug, Clone, PartialEq)]
pub enum RdnfError {
    /// Two operands live in cubes of different dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// A dimension is zero or exceeds the enumeration cap for the operation.
    DimensionCap { n: usize, max: usize },
    /// A layer or interval dimension `k` outside `0..=n`.
    KOutOfRange { k: usize, n: usize },
    /// The two intervals are not neighbors, so they cannot be joined.
    NotNeighbors,
    /// A probability outside the open interval (0, 1).
    InvalidProbability(f64),
    /// An index at or beyond its limit (vertex index or sample index).
    IndexOutOfRange { index: u64, limit: u64 },
    /// Zero samples requested.
    NoSamples,
    /// Number of variable names does not match the cube dimension.
    NameCount { expected: usize, found: usize },
    /// Malformed truth-table or interval text.
    Parse(String),
    /// An argument outside the stated domain of an analytic formula.
    Domain(String),
    /// An exact integer count does not fit in the result type.
    Overflow(&'static str),
}

impl fmt::Display for RdnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RdnfError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            RdnfError::DimensionCap { n, max } => {
                write!(f, "dimension {n} outside supported range 1..={max}")
            }
            RdnfError::KOutOfRange { k, n } => write!(f, "k={k} out of range 0..={n}"),
            RdnfError::NotNeighbors => write!(f, "intervals are not neighbors"),
            RdnfError::InvalidProbability(p) => {
                write!(f, "probability {p} outside the open interval (0, 1)")
            }
            RdnfError::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range, limit {limit}")
            }
            RdnfError::NoSamples => write!(f, "sample count must be at least 1"),
            RdnfError::NameCount { expected, found } => {
                write!(f, "expected {expected} variable names, found {found}")
            }
            RdnfError::Parse(msg) => write!(f, "parse error: {msg}"),
            RdnfError::Domain(msg) => write!(f, "domain error: {msg}"),
            RdnfError::Overflow(what) => write!(f, "integer overflow computing {what}"),
        }
    }
}

impl std::error::Error for RdnfError {}

pub type Result<T> = std::result::Result<T, RdnfError>;
