use thiserror::Error;

/// Errors raised while building or validating a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty table: a semigroup needs at least one element")]
    Empty,
    #[error("ragged table: row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("index {value} out of range at {location} (element count {n})")]
    IndexOutOfRange {
        location: String,
        value: usize,
        n: usize,
    },
    #[error("NotAssociative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("NotRegular: element {0}")]
    NotRegular(usize),
    #[error("InverseNotUnique: element {x} has inverses {first} and {second}")]
    InverseNotUnique {
        x: usize,
        first: usize,
        second: usize,
    },
    #[error("StarMismatch: supplied star {star} is not an inverse of element {x}")]
    StarMismatch { x: usize, star: usize },
    #[error("names: got {got} labels for {n} elements")]
    NameCount { got: usize, n: usize },
    #[error("NotIdempotent: element {0}")]
    NotIdempotent(usize),
    #[error("NotAGroup: element {0} is not invertible")]
    NotAGroup(usize),
    #[error("SizeLimit: {what} supports at most {max}, got {got}")]
    SizeLimit {
        what: &'static str,
        max: usize,
        got: usize,
    },
    #[error("BadParams: {0}")]
    BadParams(String),
}

impl SemigroupError {
    /// True for malformed input (shape, ranges, parameters) as opposed to a
    /// well-formed table that violates an algebraic law.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Self::Empty
                | Self::Ragged { .. }
                | Self::IndexOutOfRange { .. }
                | Self::NameCount { .. }
                | Self::SizeLimit { .. }
                | Self::BadParams(_)
        )
    }
}

/// Errors from operations on functions, operators and representations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("BaseMismatch: operands live on different semigroups")]
    BaseMismatch,
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("NotRestricted: {0}")]
    NotRestricted(String),
    #[error("ZeroNotKilled: representation does not vanish on the adjoined zero")]
    ZeroNotKilled,
    #[error("NotRPD: minimum Gram eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotRpd {
        min_eigenvalue: f64,
        tolerance: f64,
        witness: Vec<num_complex::Complex64>,
    },
    #[error("ReconstructionFailed: residual {residual:e} exceeds {bound:e}")]
    ReconstructionFailed { residual: f64, bound: f64 },
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
