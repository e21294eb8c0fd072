use std::collections::HashSet;

use crate::bitmatrix::BitMatrix;

/// Balance properties of a matrix, measured by direct counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub column_weight_ok: bool,
    pub columns_distinct: bool,
    pub row_weights: Vec<usize>,
    pub max_row_delta: usize,
    /// Row weights are non-increasing from top to bottom.
    pub heavy_rows_on_top: bool,
}

impl BalanceReport {
    /// Column weights correct, columns distinct, row spread at most one.
    pub fn is_balanced(&self) -> bool {
        self.column_weight_ok && self.columns_distinct && self.max_row_delta <= 1
    }

    /// Rows at the maximum weight when weights are not all equal, else 0.
    pub fn heavy_row_count(&self) -> usize {
        if self.max_row_delta == 0 {
            return 0;
        }
        let max = self.row_weights.iter().copied().max().unwrap_or(0);
        self.row_weights.iter().filter(|&&w| w == max).count()
    }
}

pub(crate) fn columns_distinct(mat: &BitMatrix) -> bool {
    let mut seen = HashSet::with_capacity(mat.cols());
    (0..mat.cols()).all(|c| seen.insert(mat.column(c)))
}

pub(crate) fn max_row_delta(row_weights: &[usize]) -> usize {
    match (row_weights.iter().max(), row_weights.iter().min()) {
        (Some(max), Some(min)) => max - min,
        _ => 0,
    }
}

pub fn verify_balanced(mat: &BitMatrix, weight: usize) -> BalanceReport {
    let row_weights = mat.row_weights();
    BalanceReport {
        column_weight_ok: mat.column_weights().iter().all(|&w| w == weight),
        columns_distinct: columns_distinct(mat),
        max_row_delta: max_row_delta(&row_weights),
        heavy_rows_on_top: row_weights.windows(2).all(|w| w[0] >= w[1]),
        row_weights,
    }
}
