use thiserror::Error;

use crate::units::Dimension;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: Dimension,
        found: Dimension,
    },

    #[error("non-finite result in {0}")]
    NonFinite(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("unknown unit system `{0}` (expected si, natural or planck)")]
    UnknownUnitSystem(String),

    #[error("dimension {dim} is not expressible in the {system} unit system")]
    NotExpressible { dim: Dimension, system: String },

    #[error("r = {r} lies on or inside the horizon R = {horizon}; g00 = {g00} is not positive")]
    HorizonSingular { r: f64, horizon: f64, g00: f64 },

    #[error("metric is singular at {at:?} (|det g| = {det:e})")]
    SingularMetric { at: [f64; 4], det: f64 },

    #[error("tangent is not timelike at s = {s} (g(v, v) = {norm})")]
    NotTimelike { s: f64, norm: f64 },

    #[error("identity check failed: {0}")]
    IdentityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for the common "`name` must be positive" rejection.
pub(crate) fn must_be_positive(name: &str) -> Error {
    Error::InvalidInput(format!("{name} must be positive"))
}
