//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by measure construction, norms, operators and
/// decompositions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty measure")]
    EmptyMeasure,
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate box")]
    DegenerateBox,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("unknown surface: {0}")]
    UnknownSurface(String),
    #[error("empty grid")]
    EmptyGrid,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("norm requires p > 1")]
    NormRequiresP,
    #[error("measure mismatch")]
    MeasureMismatch,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("uncovered point")]
    UncoveredPoint,
    #[error("threshold too small: {0}")]
    ThresholdTooSmall(String),
    #[error("depth limit: {0}")]
    DepthLimit(String),
    #[error("no boundary data: {0}")]
    NoBoundaryData(String),
    #[error("axis too short")]
    AxisTooShort,
    #[error("trace plane outside domain")]
    TracePlaneOutsideDomain,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
