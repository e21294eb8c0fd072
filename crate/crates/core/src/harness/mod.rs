//! Independent checks and instrumentation.
//!
//! * [`oracle_delta_exists`] decides feasibility by exhaustive search.
//! * [`oracle_verify_all`] runs every generator over every small spec.
//! * [`measure_generation`] and [`measure_grid`] count generator work.
//! * [`inject_faults`] drives single and double bit flips through the codec.

mod faults;
mod oracle;
mod scaling;

pub use crate::delta::OpCounter;
pub use faults::{inject_faults, ClassTally, FaultMode, FaultReport};
pub use oracle::{oracle_delta_exists, oracle_verify_all, VerifySummary, ORACLE_MAX_ROWS, VERIFY_MAX_ROWS};
pub use scaling::{
    measure_generation, measure_grid, normalized_work, Grid, ScalingPoint, ScalingReport,
    StrategyFit, WidthSelection,
};
