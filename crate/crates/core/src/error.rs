use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("coordinate {coord} out of range for dimension {dim}")]
    CoordinateOutOfRange { coord: usize, dim: usize },

    #[error("coordinate {coord} of {point} is already set")]
    CoordinateSet { coord: usize, point: String },

    #[error("invalid square: {0}")]
    InvalidSquare(String),

    #[error("square {0} is not violated")]
    NotViolated(String),

    #[error("point {0} is not in the domain of the partial function")]
    Undefined(String),

    #[error("lattice seeds must be nonempty")]
    EmptySeeds,

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed walk: {0}")]
    MalformedWalk(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("construction invariant violated: {0}")]
    Construction(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
