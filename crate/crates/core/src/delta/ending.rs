//! Closed-form base cases of the recursion.

use super::DeltaSpec;
use crate::bitmatrix::BitMatrix;

/// Base cases, matched in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EndingKind {
    /// `width == 0`: no columns.
    Empty,
    /// `weight == 0`: a single all-zero column.
    Zeros,
    /// `weight == rows`: a single all-one column.
    Ones,
    /// `width == 1`: `weight` ones at the top of a single column.
    SingleColumn,
    /// `weight == 1`: column `i` has its one in row `i`.
    Diagonal,
    /// `weight == rows - 1`: top `rows - width` rows all ones, then column `i`
    /// has its zero in row `rows - width + i`.
    CoDiagonal,
}

pub(crate) fn ending_kind(spec: DeltaSpec) -> Option<EndingKind> {
    let DeltaSpec {
        rows,
        weight,
        width,
    } = spec;
    if width == 0 {
        Some(EndingKind::Empty)
    } else if weight == 0 {
        Some(EndingKind::Zeros)
    } else if weight == rows {
        Some(EndingKind::Ones)
    } else if width == 1 {
        Some(EndingKind::SingleColumn)
    } else if weight == 1 {
        Some(EndingKind::Diagonal)
    } else if weight + 1 == rows {
        Some(EndingKind::CoDiagonal)
    } else {
        None
    }
}

/// Writes the base-case block for `spec` at `(row0, col0)` of `buf`,
/// touching every cell of the block. Returns the number of cells written.
pub(crate) fn write_ending(
    buf: &mut BitMatrix,
    row0: usize,
    col0: usize,
    spec: DeltaSpec,
    kind: EndingKind,
) -> u64 {
    let DeltaSpec {
        rows,
        weight,
        width,
    } = spec;
    for r in 0..rows {
        let row = &mut buf.row_mut(row0 + r)[col0..col0 + width];
        for (c, cell) in row.iter_mut().enumerate() {
            let one = match kind {
                EndingKind::Empty | EndingKind::Zeros => false,
                EndingKind::Ones => true,
                EndingKind::SingleColumn => r < weight,
                EndingKind::Diagonal => r == c,
                EndingKind::CoDiagonal => r != rows - width + c,
            };
            *cell = one as u8;
        }
    }
    (rows * width) as u64
}

/// The canonical matrix for a base-case spec, or `None` when the spec must
/// be split (`2 <= weight <= rows - 2` and `width >= 2`).
///
/// The spec is assumed to satisfy the L-condition.
pub fn ending_state(spec: DeltaSpec) -> Option<BitMatrix> {
    let kind = ending_kind(spec)?;
    let mut m = BitMatrix::zeros(spec.rows, spec.width);
    write_ending(&mut m, 0, 0, spec, kind);
    Some(m)
}
