use thiserror::Error;

/// Errors produced by the semantics engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("subset of width {found} used with a carrier of size {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("point {point} is outside the carrier of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("carrier size {0} is not supported (must be between 1 and {max})", max = crate::subset::MAX_POINTS)]
    BadCarrier(usize),
    #[error("family of opens is not a topology: {0}")]
    NotATopology(String),
    #[error("invalid Visser frame: {0}")]
    InvalidFrame(String),
    #[error("tau0 is not scattered")]
    NotScattered,
    #[error("space is not a CL-space (tau0 is not scattered)")]
    NotClSpace,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("variable p{0} has no value in the valuation")]
    UnboundVariable(u32),
    #[error("schema variable '{0}' has no binding")]
    MissingBinding(char),
    #[error("unknown schema '{0}'")]
    UnknownSchema(String),
    #[error("unknown frame class '{0}'")]
    UnknownClass(String),
    #[error("invalid bouquet specification: {0}")]
    InvalidBouquet(String),
    #[error("invalid model file: {0}")]
    ModelFile(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
