//! Crate-wide error type.

use thiserror::Error;

/// Errors produced while building universes, evaluating measures, or
/// checking orderings.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid universe spec: {0}")]
    InvalidSpec(String),

    #[error("invalid measure config: {0}")]
    InvalidConfig(String),

    #[error("measure not supported here: {0}")]
    UnsupportedMeasure(String),

    #[error("universe would have {requested} elements, cap is {cap}")]
    UniverseCap { requested: u128, cap: u64 },

    #[error("order space has {requested} orderings, cap is {cap}")]
    OrderCap { requested: u128, cap: u64 },

    #[error("difference-structure check over a universe of {elements} elements exceeds cap {cap}")]
    QuadrupleCap { elements: usize, cap: usize },

    #[error("values and ordering refer to different universes")]
    UniverseMismatch,

    #[error("bad ordering text: {0}")]
    ParseOrdering(String),

    #[error("partial order given: {0}")]
    PartialOrderUnsupported(String),

    #[error("bad rational literal {literal:?}: {reason}")]
    ParseRational { literal: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: cap violations exit 3, everything
    /// else is a config error and exits 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UniverseCap { .. } | Error::OrderCap { .. } | Error::QuadrupleCap { .. } => 3,
            _ => 2,
        }
    }
}
