use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::OpCounter;
use crate::delta::{binomial, generate_delta_counted, DeltaSpec, Strategy};
use crate::error::{Error, Result};

/// Work of one generation run.
pub fn measure_generation(spec: DeltaSpec, strategy: Strategy) -> Result<OpCounter> {
    generate_delta_counted(spec, strategy).map(|(_, ops)| ops)
}

/// `writes / (R * m * (log2 m + 1))`; `None` for an empty matrix.
pub fn normalized_work(spec: DeltaSpec, element_writes: u64) -> Option<f64> {
    if spec.width == 0 {
        return None;
    }
    let m = spec.width as f64;
    Some(element_writes as f64 / (spec.rows as f64 * m * (m.log2() + 1.0)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthSelection {
    /// Every width from 0 to `C(R,J)`.
    All,
    /// Only `C(R,J)`.
    Full,
    /// Widths in range, clipped to `C(R,J)`.
    Range(RangeInclusive<usize>),
}

/// A set of specs to measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub rows: RangeInclusive<usize>,
    /// Defaults to every weight `0..=R`.
    pub weights: Option<RangeInclusive<usize>>,
    pub widths: WidthSelection,
}

impl Grid {
    pub fn specs(&self) -> Result<Vec<DeltaSpec>> {
        if self.rows.is_empty() || *self.rows.start() == 0 {
            return Err(Error::InvalidInput(format!(
                "row range {:?} must be non-empty and positive",
                self.rows
            )));
        }
        let mut specs = Vec::new();
        for rows in self.rows.clone() {
            let weights = self.weights.clone().unwrap_or(0..=rows);
            for weight in weights.filter(|&j| j <= rows) {
                let supply = binomial(rows, weight)
                    .and_then(|c| usize::try_from(c).ok())
                    .ok_or_else(|| Error::Scale(format!("C({rows},{weight}) too large")))?;
                match &self.widths {
                    WidthSelection::All => {
                        specs.extend((0..=supply).map(|m| DeltaSpec::new(rows, weight, m)))
                    }
                    WidthSelection::Full => specs.push(DeltaSpec::new(rows, weight, supply)),
                    WidthSelection::Range(range) => specs.extend(
                        range
                            .clone()
                            .filter(|&m| m <= supply)
                            .map(|m| DeltaSpec::new(rows, weight, m)),
                    ),
                }
            }
        }
        Ok(specs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingPoint {
    pub spec: DeltaSpec,
    pub strategy: Strategy,
    pub ops: OpCounter,
    pub ratio: Option<f64>,
}

/// Largest and mean normalized work for one strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategyFit {
    pub strategy: Strategy,
    pub points: usize,
    pub max_ratio: f64,
    pub worst: Option<DeltaSpec>,
    pub mean_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
}

pub const SCALING_CSV_HEADER: &str =
    "rows,weight,width,strategy,element_writes,row_moves,recursion_depth,ratio";

impl ScalingReport {
    pub fn fit(&self, strategy: Strategy) -> StrategyFit {
        let mut fit = StrategyFit {
            strategy,
            points: 0,
            max_ratio: 0.0,
            worst: None,
            mean_ratio: 0.0,
        };
        let mut sum = 0.0;
        for p in self.points.iter().filter(|p| p.strategy == strategy) {
            let Some(ratio) = p.ratio else { continue };
            fit.points += 1;
            sum += ratio;
            if ratio > fit.max_ratio {
                fit.max_ratio = ratio;
                fit.worst = Some(p.spec);
            }
        }
        if fit.points > 0 {
            fit.mean_ratio = sum / fit.points as f64;
        }
        fit
    }

    /// One row per (spec, strategy); empty matrices report a ratio of 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SCALING_CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{:.6}",
                p.spec.rows,
                p.spec.weight,
                p.spec.width,
                p.strategy,
                p.ops.element_writes,
                p.ops.row_moves,
                p.ops.recursion_depth,
                p.ratio.unwrap_or(0.0)
            );
        }
        out
    }

    /// `key=value` summary lines, one per strategy present.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for strategy in Strategy::ALL {
            let fit = self.fit(strategy);
            if fit.points == 0 {
                continue;
            }
            let worst = fit.worst.map_or_else(|| "none".into(), |s| s.to_string());
            let _ = writeln!(
                out,
                "strategy={} points={} max_ratio={:.6} worst={} mean_ratio={:.6}",
                strategy, fit.points, fit.max_ratio, worst, fit.mean_ratio
            );
        }
        out
    }
}

/// Measures every spec under every listed strategy. Points come back in
/// spec order, strategies in the order given.
pub fn measure_grid(specs: &[DeltaSpec], strategies: &[Strategy]) -> Result<ScalingReport> {
    let jobs: Vec<(DeltaSpec, Strategy)> = specs
        .iter()
        .flat_map(|&s| strategies.iter().map(move |&st| (s, st)))
        .collect();
    let points = jobs
        .into_par_iter()
        .map(|(spec, strategy)| {
            let ops = measure_generation(spec, strategy)?;
            Ok(ScalingPoint {
                spec,
                strategy,
                ops,
                ratio: normalized_work(spec, ops.element_writes),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalingReport { points })
}
