use crate::delta::{
    binomial, generate_delta_counted, generate_delta_iterative, verify_balanced, DeltaSpec,
    Strategy,
};
use crate::error::{Error, Result};
use crate::BitMatrix;

pub const ORACLE_MAX_ROWS: usize = 6;
pub const VERIFY_MAX_ROWS: usize = 10;

/// Searches for any matrix with `width` distinct columns of weight
/// `weight` and row weights within one of each other.
///
/// Candidates are tried in ascending bitmask order, pruning when a row would
/// exceed the ceiling weight or can no longer reach the floor weight.
pub fn oracle_delta_exists(spec: DeltaSpec) -> Result<bool> {
    let DeltaSpec {
        rows,
        weight,
        width,
    } = spec;
    if rows == 0 || rows > ORACLE_MAX_ROWS {
        return Err(Error::Scale(format!(
            "oracle handles 1..={ORACLE_MAX_ROWS} rows, got {rows}"
        )));
    }
    if weight > rows {
        return Ok(false);
    }
    let candidates: Vec<u32> = (0u32..1 << rows)
        .filter(|c| c.count_ones() as usize == weight)
        .collect();
    if width > candidates.len() {
        return Ok(false);
    }
    let total = width * weight;
    let floor = total / rows;
    let ceil = total.div_ceil(rows);
    let mut counts = vec![0usize; rows];
    Ok(search(&candidates, 0, width, floor, ceil, &mut counts))
}

fn search(
    candidates: &[u32],
    start: usize,
    left: usize,
    floor: usize,
    ceil: usize,
    counts: &mut [usize],
) -> bool {
    if left == 0 {
        return counts.iter().all(|&c| c >= floor);
    }
    if counts.iter().any(|&c| c + left < floor) {
        return false;
    }
    for i in start..=candidates.len() - left {
        let col = candidates[i];
        let rows = counts.len();
        let bits = || (0..rows).filter(move |r| (col >> r) & 1 == 1);
        if bits().any(|r| counts[r] == ceil) {
            continue;
        }
        bits().for_each(|r| counts[r] += 1);
        if search(candidates, i + 1, left - 1, floor, ceil, counts) {
            return true;
        }
        bits().for_each(|r| counts[r] -= 1);
    }
    false
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    /// Distinct specs visited.
    pub instances: usize,
    /// Generated matrices checked (several generators per spec).
    pub matrices: usize,
}

fn check(spec: DeltaSpec, label: &str, mat: &BitMatrix) -> Result<()> {
    let fail = |detail: String| Error::Verification {
        spec,
        strategy: label.to_string(),
        detail,
    };
    if (mat.rows(), mat.cols()) != (spec.rows, spec.width) {
        return Err(fail(format!("shape {}x{}", mat.rows(), mat.cols())));
    }
    let report = verify_balanced(mat, spec.weight);
    if !report.is_balanced() {
        return Err(fail(format!("{report:?}")));
    }
    if !report.heavy_rows_on_top || report.heavy_row_count() != spec.heavy_rows() {
        return Err(fail(format!(
            "expected {} heavy rows on top, row weights {:?}",
            spec.heavy_rows(),
            report.row_weights
        )));
    }
    Ok(())
}

/// Runs both merge strategies and the stack-based generator over every
/// feasible spec with `1 <= rows <= limit_rows`, failing on the first spec
/// whose output is not balanced.
pub fn oracle_verify_all(limit_rows: usize) -> Result<VerifySummary> {
    if limit_rows > VERIFY_MAX_ROWS {
        return Err(Error::Scale(format!(
            "exhaustive verification is limited to {VERIFY_MAX_ROWS} rows"
        )));
    }
    let mut summary = VerifySummary::default();
    for rows in 1..=limit_rows {
        for weight in 0..=rows {
            let supply = binomial(rows, weight).expect("small") as usize;
            for width in 0..=supply {
                let spec = DeltaSpec::new(rows, weight, width);
                for strategy in Strategy::ALL {
                    let (mat, _) = generate_delta_counted(spec, strategy)?;
                    check(spec, strategy.as_str(), &mat)?;
                }
                check(spec, "iterative", &generate_delta_iterative(spec)?)?;
                summary.instances += 1;
                summary.matrices += 3;
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::l_condition;

    #[test]
    fn oracle_examples() {
        assert!(oracle_delta_exists(DeltaSpec::new(4, 2, 6)).unwrap());
        assert!(!oracle_delta_exists(DeltaSpec::new(4, 2, 7)).unwrap());
        assert!(oracle_delta_exists(DeltaSpec::new(5, 2, 10)).unwrap());
        assert!(oracle_delta_exists(DeltaSpec::new(6, 3, 10)).unwrap());
        assert!(oracle_delta_exists(DeltaSpec::new(7, 3, 1)).is_err());
    }

    #[test]
    fn oracle_agrees_with_l_condition() {
        for rows in 1..=ORACLE_MAX_ROWS {
            for weight in 0..=rows + 1 {
                let supply = binomial(rows, weight).unwrap() as usize;
                for width in 0..=supply + 2 {
                    let spec = DeltaSpec::new(rows, weight, width);
                    assert_eq!(oracle_delta_exists(spec).unwrap(), l_condition(spec), "{spec}");
                }
            }
        }
    }

    #[test]
    fn verify_all_counts() {
        // Per R, sum over J of (C(R,J) + 1) = 2^R + R + 1: 4 + 7 + 12 + 21.
        assert_eq!(oracle_verify_all(4).unwrap().instances, 44);
        assert_eq!(oracle_verify_all(1).unwrap().instances, 4);
        assert!(oracle_verify_all(11).is_err());
    }
}
