//! Recursively balanced {0,1} matrices.
//!
//! A balanced matrix for `(rows, weight, width)` has `width` pairwise
//! distinct columns, each containing exactly `weight` ones, and row weights
//! that differ by at most one. Rows carrying the extra one ("heavy" rows)
//! are always kept at the top.
//!
//! Construction splits the problem on its first row: the left `m1` columns
//! start with a 1 and continue with a `(rows-1, weight-1, m1)` block, the
//! remaining columns start with a 0 and continue with a
//! `(rows-1, weight, width-m1)` block. With `m1 = ceil(width*weight/rows)`
//! both halves stay feasible, and merging them while steering heavy rows
//! apart keeps the result balanced. Two merges are provided:
//!
//! * [`Strategy::Flip`] turns the right block upside down, concatenates, then
//!   stably sorts rows by weight.
//! * [`Strategy::Shift`] precomputes how many heavy rows each half has and
//!   rotates the right block so the heavy rows interleave, with no sorting.

pub(crate) mod balance;
mod ending;
mod generate;
mod merge;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use balance::{verify_balanced, BalanceReport};
pub use ending::ending_state;
pub use generate::{
    generate_delta, generate_delta_counted, generate_delta_iterative,
    generate_delta_iterative_counted, OpCounter,
};
pub use merge::{merge_flip, merge_shift};

/// Exact binomial coefficient, `None` on `u128` overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc == C(n, i) here, so acc * (n - i) is divisible by i + 1.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// A balanced-matrix problem instance: `rows` (R), column `weight` (J) and
/// `width` (m, the number of columns).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSpec {
    pub rows: usize,
    pub weight: usize,
    pub width: usize,
}

impl DeltaSpec {
    pub const fn new(rows: usize, weight: usize, width: usize) -> Self {
        Self {
            rows,
            weight,
            width,
        }
    }

    /// Number of distinct columns of this weight, `C(rows, weight)`.
    pub fn column_supply(&self) -> Option<u128> {
        binomial(self.rows, self.weight)
    }

    /// Ones in every row is `floor` or `ceil` of this over `rows`.
    pub fn total_ones(&self) -> u128 {
        self.width as u128 * self.weight as u128
    }

    /// Number of rows that carry the ceiling weight.
    pub fn heavy_rows(&self) -> usize {
        if self.rows == 0 {
            return 0;
        }
        (self.total_ones() % self.rows as u128) as usize
    }

    /// Weight of the light rows, `floor(width * weight / rows)`.
    pub fn base_row_weight(&self) -> usize {
        if self.rows == 0 {
            return 0;
        }
        (self.total_ones() / self.rows as u128) as usize
    }
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.rows, self.weight, self.width)
    }
}

/// Feasibility: `weight <= rows` and `width <= C(rows, weight)`.
///
/// When `C(rows, weight)` does not fit in `u128` it is necessarily larger
/// than any `usize` width, so the answer is still exact.
pub fn l_condition(spec: DeltaSpec) -> bool {
    check_l_condition(spec).is_ok()
}

/// Like [`l_condition`] but names the violated bound.
pub fn check_l_condition(spec: DeltaSpec) -> Result<()> {
    let infeasible = |reason: String| Error::Infeasible { spec, reason };
    if spec.rows == 0 {
        return Err(infeasible("row count R must be positive".into()));
    }
    if spec.weight > spec.rows {
        return Err(infeasible(format!(
            "J={} > R={}",
            spec.weight, spec.rows
        )));
    }
    match spec.column_supply() {
        Some(supply) if spec.width as u128 > supply => Err(infeasible(format!(
            "m={} > C({},{})={}",
            spec.width, spec.rows, spec.weight, supply
        ))),
        _ => Ok(()),
    }
}

/// Where a spec is split, and the heavy-row bookkeeping of both halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPoint {
    /// Width of the left block (columns whose first entry is 1).
    pub left_width: usize,
    /// Heavy rows in the `(R-1, J-1, m1)` left block.
    pub left_heavy: usize,
    /// Heavy rows in the `(R-1, J, m-m1)` right block.
    pub right_heavy: usize,
    /// Rows that receive a heavy row from both halves.
    pub overlap: usize,
}

impl SplitPoint {
    pub fn children(&self, spec: DeltaSpec) -> (DeltaSpec, DeltaSpec) {
        (
            DeltaSpec::new(spec.rows - 1, spec.weight - 1, self.left_width),
            DeltaSpec::new(spec.rows - 1, spec.weight, spec.width - self.left_width),
        )
    }
}

/// Split point for a spec that is not an ending state.
///
/// Requires the L-condition, `2 <= weight <= rows - 2` and `width >= 2`.
pub fn split_point(spec: DeltaSpec) -> Result<SplitPoint> {
    check_l_condition(spec)?;
    if ending::ending_kind(spec).is_some() {
        return Err(Error::NotSplittable(spec));
    }
    Ok(split_unchecked(spec))
}

pub(crate) fn split_unchecked(spec: DeltaSpec) -> SplitPoint {
    let rows = spec.rows as u128;
    let weight = spec.weight as u128;
    let width = spec.width as u128;
    let left_width = (width * weight).div_ceil(rows);
    let lower = rows - 1;
    let left_heavy = ((weight - 1) * left_width % lower) as usize;
    let right_heavy = (weight * (width - left_width) % lower) as usize;
    let overlap = (left_heavy + right_heavy).saturating_sub(lower as usize);
    SplitPoint {
        left_width: left_width as usize,
        left_heavy,
        right_heavy,
        overlap,
    }
}

/// Merge used to combine the two halves of a split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Flip,
    Shift,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Flip, Strategy::Shift];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Flip => "flip",
            Strategy::Shift => "shift",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "flip" => Ok(Strategy::Flip),
            "shift" => Ok(Strategy::Shift),
            other => Err(format!("unknown strategy '{other}' (expected flip or shift)")),
        }
    }
}
