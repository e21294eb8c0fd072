use thiserror::Error;

use crate::delta::DeltaSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infeasible spec {spec}: {reason}")]
    Infeasible { spec: DeltaSpec, reason: String },

    #[error("spec {0} is an ending state and has no split point")]
    NotSplittable(DeltaSpec),

    #[error("row count mismatch: left has {left} rows, right has {right}")]
    RowMismatch { left: usize, right: usize },

    #[error("{side} block does not have exactly {expected} heavy rows on top")]
    HeavyRows { side: &'static str, expected: usize },

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("scale guard: {0}")]
    Scale(String),

    #[error("not a usable check matrix: {0}")]
    BadCheckMatrix(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("balance check failed for {spec} ({strategy}): {detail}")]
    Verification {
        spec: DeltaSpec,
        strategy: String,
        detail: String,
    },
}
