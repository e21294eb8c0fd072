//! Hsiao SEC-DED check matrices built from recursively balanced {0,1}
//! matrices.
//!
//! * [`delta`] generates the balanced blocks.
//! * [`planner`] sizes the code and assembles the full check matrix.
//! * [`codec`] encodes and syndrome-decodes words against it.
//! * [`harness`] holds brute-force oracles, fault injection and op counting.
//! * [`format`] renders and parses matrices as text.

pub mod bitmatrix;
pub mod codec;
pub mod delta;
pub mod error;
pub mod format;
pub mod harness;
pub mod planner;

pub use bitmatrix::BitMatrix;
pub use codec::{Codeword, DecodeOutcome, OutcomeKind, SecDed, Syndrome};
pub use delta::{
    generate_delta, generate_delta_iterative, l_condition, split_point, verify_balanced,
    BalanceReport, DeltaSpec, OpCounter, SplitPoint, Strategy,
};
pub use error::{Error, Result};
pub use planner::{build_check_matrix, compute_check_bits, plan_blocks, BlockPlan, CheckMatrix};
