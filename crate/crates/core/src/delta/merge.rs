//! The two row-balancing merges.
//!
//! Both take balanced halves with heavy rows on top and return their
//! left-right union with the right half's rows permuted. Row orders are
//! expressed as `order[dest] = src`.

use super::SplitPoint;
use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};

/// Row order for the right half under the shift merge.
///
/// `lower` is the row count of both halves, `left_heavy`/`right_heavy` the
/// number of heavy rows each carries on top.
pub(crate) fn shift_order(lower: usize, left_heavy: usize, right_heavy: usize) -> Vec<usize> {
    if left_heavy == 0 || right_heavy == 0 {
        return (0..lower).collect();
    }
    if left_heavy + right_heavy <= lower {
        // Rotate down so the right heavy rows land on left_heavy..left_heavy+right_heavy.
        return (0..lower)
            .map(|dest| (dest + lower - left_heavy) % lower)
            .collect();
    }
    // The first `overlap` heavy rows stay put and pair with left heavy rows;
    // the rest go below every left heavy row.
    let overlap = left_heavy + right_heavy - lower;
    (0..overlap)
        .chain(right_heavy..lower)
        .chain(overlap..right_heavy)
        .collect()
}

/// Stable order of rows by weight, heaviest first.
pub(crate) fn weight_order(weights: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    order
}

/// True when exactly the first `heavy` rows weigh one more than the rest.
pub(crate) fn has_heavy_prefix(weights: &[usize], heavy: usize) -> bool {
    let Some(&last) = weights.last() else {
        return heavy == 0;
    };
    if heavy >= weights.len() {
        return false;
    }
    weights
        .iter()
        .enumerate()
        .all(|(i, &w)| w == if i < heavy { last + 1 } else { last })
}

/// Flip merge: turn `right` upside down, concatenate, then stably move the
/// heavier rows to the top.
pub fn merge_flip(left: &BitMatrix, right: &BitMatrix) -> Result<BitMatrix> {
    let joined = left.hstack(&right.flipped())?;
    let order = weight_order(&joined.row_weights());
    Ok(joined.permute_rows(&order))
}

/// Shift merge: reposition the right half's heavy rows according to the
/// precomputed counts in `split`, then concatenate. No sorting happens.
///
/// Fails when either half does not carry exactly the announced number of
/// heavy rows on top, which would mean the recursion invariant is broken.
pub fn merge_shift(left: &BitMatrix, right: &BitMatrix, split: &SplitPoint) -> Result<BitMatrix> {
    if left.rows() != right.rows() {
        return Err(Error::RowMismatch {
            left: left.rows(),
            right: right.rows(),
        });
    }
    if !has_heavy_prefix(&left.row_weights(), split.left_heavy) {
        return Err(Error::HeavyRows {
            side: "left",
            expected: split.left_heavy,
        });
    }
    if !has_heavy_prefix(&right.row_weights(), split.right_heavy) {
        return Err(Error::HeavyRows {
            side: "right",
            expected: split.right_heavy,
        });
    }
    let order = shift_order(left.rows(), split.left_heavy, split.right_heavy);
    left.hstack(&right.permute_rows(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::ending_state;
    use crate::delta::DeltaSpec;

    /// A `rows`-row block whose first `heavy` rows have weight `base + 1`
    /// and the rest `base`, laid out as a simple staircase.
    fn block(rows: usize, base: usize, heavy: usize) -> BitMatrix {
        let width = base + 1;
        let data: Vec<Vec<u8>> = (0..rows)
            .map(|r| {
                let w = if r < heavy { base + 1 } else { base };
                (0..width).map(|c| (c < w) as u8).collect()
            })
            .collect();
        BitMatrix::from_rows(&data).unwrap()
    }

    fn split(left_heavy: usize, right_heavy: usize, lower: usize) -> SplitPoint {
        SplitPoint {
            left_width: 0,
            left_heavy,
            right_heavy,
            overlap: (left_heavy + right_heavy).saturating_sub(lower),
        }
    }

    #[test]
    fn flip_with_empty_right_is_identity() {
        let left = ending_state(DeltaSpec::new(4, 1, 3)).unwrap();
        let right = BitMatrix::zeros(4, 0);
        assert_eq!(merge_flip(&left, &right).unwrap(), left);
    }

    #[test]
    fn flip_of_diagonal_and_co_diagonal() {
        let left = ending_state(DeltaSpec::new(4, 1, 2)).unwrap();
        let right = ending_state(DeltaSpec::new(4, 3, 2)).unwrap();
        let merged = merge_flip(&left, &right).unwrap();
        assert_eq!((merged.rows(), merged.cols()), (4, 4));
        assert_eq!(merged.row_weights(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn flip_rejects_row_mismatch() {
        assert!(merge_flip(&BitMatrix::zeros(3, 1), &BitMatrix::zeros(4, 1)).is_err());
    }

    #[test]
    fn shift_without_heavy_rows_is_plain_concatenation() {
        let left = block(5, 2, 0);
        let right = block(5, 1, 0);
        let merged = merge_shift(&left, &right, &split(0, 0, 5)).unwrap();
        assert_eq!(merged, left.hstack(&right).unwrap());
        assert_eq!(merged.row_weights(), vec![3; 5]);
    }

    #[test]
    fn shift_disjoint_heavy_rows() {
        let left = block(5, 1, 2);
        let right = block(5, 1, 2);
        let merged = merge_shift(&left, &right, &split(2, 2, 5)).unwrap();
        // base = 1 + 1
        assert_eq!(merged.row_weights(), vec![3, 3, 3, 3, 2]);
        // right heavy rows now at rows 3-4 (1-based)
        let right_part: Vec<usize> = (0..5)
            .map(|r| merged.row(r)[2..].iter().map(|&b| b as usize).sum())
            .collect();
        assert_eq!(right_part, vec![1, 1, 2, 2, 1]);
    }

    #[test]
    fn shift_overlapping_heavy_rows() {
        let left = block(5, 1, 4);
        let right = block(5, 1, 3);
        let merged = merge_shift(&left, &right, &split(4, 3, 5)).unwrap();
        assert_eq!(merged.row_weights(), vec![4, 4, 3, 3, 3]);
        let extras: usize = merged.row_weights().iter().map(|w| w - 2).sum();
        assert_eq!(extras, 7);
    }

    #[test]
    fn shift_rejects_wrong_heavy_counts() {
        let left = block(5, 1, 2);
        let right = block(5, 1, 1);
        assert_eq!(
            merge_shift(&left, &right, &split(2, 2, 5)),
            Err(Error::HeavyRows {
                side: "right",
                expected: 2
            })
        );
        assert!(merge_shift(&left, &right, &split(3, 1, 5)).is_err());
        assert!(merge_shift(&block(4, 1, 0), &right, &split(0, 1, 5)).is_err());
    }

    #[test]
    fn shift_order_is_a_permutation() {
        for lower in 1..12 {
            for a in 0..lower {
                for b in 0..lower {
                    let mut order = shift_order(lower, a, b);
                    order.sort_unstable();
                    assert_eq!(order, (0..lower).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn heavy_prefix_detection() {
        assert!(has_heavy_prefix(&[3, 3, 2], 2));
        assert!(has_heavy_prefix(&[2, 2, 2], 0));
        assert!(!has_heavy_prefix(&[2, 3, 2], 1));
        assert!(!has_heavy_prefix(&[3, 3, 3], 3));
        assert!(has_heavy_prefix(&[], 0));
    }
}
