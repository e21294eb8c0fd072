//! Sizing a Hsiao code and assembling its check matrix.
//!
//! For `k` data bits the code uses the fewest check bits `R` with
//! `2^(R-1) >= k + R`. The `n = k + R` columns are then taken greedily by
//! weight: all `C(R,1)` weight-1 columns, all `C(R,3)` weight-3 columns, and
//! so on, with the last weight class only partially used. Each class is a
//! balanced block, so the assembled matrix has odd, distinct columns, the
//! minimum possible number of ones, and row weights within one of each
//! other.

use crate::bitmatrix::BitMatrix;
use crate::delta::{balance, binomial, generate_delta, DeltaSpec, Strategy};
use crate::error::{Error, Result};

/// Smallest `R` with `2^(R-1) >= k + R`.
pub fn compute_check_bits(data_bits: usize) -> Result<usize> {
    if data_bits == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let k = data_bits as u128;
    (1usize..128)
        .find(|&r| (1u128 << (r - 1)) >= k + r as u128)
        .ok_or_else(|| Error::Scale(format!("no check-bit count for k={data_bits}")))
}

/// Column-weight decomposition of a Hsiao code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub data_bits: usize,
    pub check_bits: usize,
    /// Codeword length `k + R`.
    pub length: usize,
    /// Index `I` of the last (possibly partial) block; its weight is `2I + 1`.
    pub partial_index: usize,
    /// Width of the last block.
    pub partial_width: usize,
    /// Blocks in ascending column weight 1, 3, 5, ...
    pub blocks: Vec<DeltaSpec>,
}

impl BlockPlan {
    pub fn total_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.weight * b.width).sum()
    }
}

pub fn plan_blocks(data_bits: usize) -> Result<BlockPlan> {
    let check_bits = compute_check_bits(data_bits)?;
    let length = data_bits + check_bits;
    let mut blocks = Vec::new();
    let mut covered = 0usize;
    for index in 0.. {
        let weight = 2 * index + 1;
        if weight > check_bits {
            // 2^(R-1) >= n guarantees the odd weights cover n.
            unreachable!("odd-weight columns exhausted before covering n={length}");
        }
        let supply = binomial(check_bits, weight).expect("R < 128 keeps C(R, w) in range");
        let remaining = (length - covered) as u128;
        if remaining <= supply {
            let width = remaining as usize;
            blocks.push(DeltaSpec::new(check_bits, weight, width));
            return Ok(BlockPlan {
                data_bits,
                check_bits,
                length,
                partial_index: index,
                partial_width: width,
                blocks,
            });
        }
        blocks.push(DeltaSpec::new(check_bits, weight, supply as usize));
        covered += supply as usize;
    }
    unreachable!()
}

/// A systematic Hsiao check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    pub h: BitMatrix,
    /// `parity_positions[row]` is the weight-1 column whose one is in `row`.
    pub parity_positions: Vec<usize>,
    /// Remaining columns, left to right; payload bit `i` lives at `data_positions[i]`.
    pub data_positions: Vec<usize>,
}

impl CheckMatrix {
    /// Wraps an arbitrary matrix, requiring odd-weight distinct columns that
    /// include every weight-1 column.
    pub fn from_matrix(h: BitMatrix) -> Result<Self> {
        let report = verify_hsiao(&h);
        if !report.odd_columns {
            return Err(Error::BadCheckMatrix("a column has even weight".into()));
        }
        if !report.columns_distinct {
            return Err(Error::BadCheckMatrix("two columns are equal".into()));
        }
        let mut parity = vec![None; h.rows()];
        let mut data_positions = Vec::new();
        for (c, w) in h.column_weights().into_iter().enumerate() {
            if w == 1 {
                let row = (0..h.rows()).find(|&r| h.get(r, c)).expect("weight 1");
                parity[row] = Some(c);
            } else {
                data_positions.push(c);
            }
        }
        let parity_positions = parity
            .into_iter()
            .enumerate()
            .map(|(row, c)| {
                c.ok_or_else(|| {
                    Error::BadCheckMatrix(format!("no weight-1 column covers row {row}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            h,
            parity_positions,
            data_positions,
        })
    }

    pub fn data_bits(&self) -> usize {
        self.data_positions.len()
    }

    pub fn check_bits(&self) -> usize {
        self.h.rows()
    }

    pub fn length(&self) -> usize {
        self.h.cols()
    }
}

/// Builds the check matrix for `data_bits` by concatenating the planned
/// blocks left to right.
pub fn build_check_matrix(data_bits: usize, strategy: Strategy) -> Result<CheckMatrix> {
    let plan = plan_blocks(data_bits)?;
    let mut h = BitMatrix::zeros(plan.check_bits, 0);
    for block in &plan.blocks {
        h = h.hstack(&generate_delta(*block, strategy)?)?;
    }
    let cm = CheckMatrix::from_matrix(h)?;
    debug_assert_eq!(cm.parity_positions, (0..plan.check_bits).collect::<Vec<_>>());
    Ok(cm)
}

/// Hsiao conditions measured on an arbitrary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsiaoReport {
    pub odd_columns: bool,
    pub columns_distinct: bool,
    pub row_weights: Vec<usize>,
    pub max_row_delta: usize,
}

impl HsiaoReport {
    pub fn is_valid(&self) -> bool {
        self.odd_columns && self.columns_distinct && self.max_row_delta <= 1
    }
}

pub fn verify_hsiao(h: &BitMatrix) -> HsiaoReport {
    let row_weights = h.row_weights();
    HsiaoReport {
        odd_columns: h.column_weights().iter().all(|w| w % 2 == 1),
        columns_distinct: balance::columns_distinct(h),
        max_row_delta: balance::max_row_delta(&row_weights),
        row_weights,
    }
}
