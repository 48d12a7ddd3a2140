use serde::Serialize;

use super::slice::{C2Context, ResourceGuard, RowSource};
use super::C2Error;
use crate::fock::AlgebraConfig;

/// Quotient dimensions of `d = 1` for weights `0..=8`.
pub fn expected_weights_d1() -> [usize; 9] {
    [1, 0, 1, 3, 1, 3, 1, 0, 1]
}

/// `n_d = 2^{2d-1} + 8d^2 + 1`.
pub fn expected_total(d: u32) -> u64 {
    (1u64 << (2 * d - 1)) + 8 * (d as u64) * (d as u64) + 1
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeightRow {
    pub weight: i64,
    pub ambient_dim: usize,
    pub c2_rank: usize,
    pub quotient_dim: usize,
    pub rows_generated: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedDimReport {
    pub d: u32,
    pub max_weight: i64,
    pub source: RowSource,
    pub per_weight: Vec<WeightRow>,
    pub total: u64,
    pub expected: u64,
    /// Least weight `s` with `quotient_dim(w) = 0` for all checked `w >= s`.
    pub stable_from: Option<i64>,
    /// Reason the computation stopped early, if it did.
    pub truncated: Option<String>,
}

impl GradedDimReport {
    /// Top weight with a nonzero quotient.
    pub fn top_weight(&self) -> Option<i64> {
        self.per_weight.iter().rev().find(|r| r.quotient_dim > 0).map(|r| r.weight)
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.per_weight.iter().map(|r| r.quotient_dim).collect()
    }

    /// The total matches and the tail has vanished inside the checked range.
    pub fn pass(&self) -> bool {
        self.truncated.is_none()
            && self.total == self.expected
            && self.stable_from.is_some_and(|s| s <= self.max_weight)
    }
}

/// Smallest admissible `max_weight` for rank `d`.
pub fn min_max_weight(d: u32) -> i64 {
    8.max(2 * d as i64) + 2
}

/// Per-weight dimensions of the `C_2` quotient of the even subalgebra.
pub fn c2_quotient_dims(
    d: u32,
    max_weight: i64,
    source: RowSource,
    guard: ResourceGuard,
) -> Result<GradedDimReport, C2Error> {
    let cfg = AlgebraConfig::new(d)?;
    let mut ctx = C2Context::new(cfg).with_source(source).with_guard(guard);
    graded_dims_with(&mut ctx, max_weight)
}

pub fn graded_dims_with(ctx: &mut C2Context, max_weight: i64) -> Result<GradedDimReport, C2Error> {
    let d = ctx.cfg().d();
    let mut report = GradedDimReport {
        d,
        max_weight,
        source: ctx.source(),
        per_weight: Vec::new(),
        total: 0,
        expected: expected_total(d),
        stable_from: None,
        truncated: None,
    };
    for w in 0..=max_weight {
        let row = (|| -> Result<WeightRow, C2Error> {
            let blocks = ctx.weight_blocks(w)?;
            let ambient_dim: usize = blocks.iter().map(|b| b.width).sum();
            let c2_rank: usize = blocks.iter().map(|b| b.rank).sum();
            let rows_generated = blocks.iter().map(|b| b.rows_generated).sum();
            Ok(WeightRow { weight: w, ambient_dim, c2_rank, quotient_dim: ambient_dim - c2_rank, rows_generated })
        })();
        match row {
            Ok(r) => {
                log::info!("d={d} w={w}: ambient {} rank {} quotient {}", r.ambient_dim, r.c2_rank, r.quotient_dim);
                report.per_weight.push(r);
            }
            Err(C2Error::Truncated(msg)) => {
                report.truncated = Some(format!("weight {w}: {msg}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    report.total = report.per_weight.iter().map(|r| r.quotient_dim as u64).sum();
    report.stable_from = match report.top_weight() {
        Some(t) if t < report.per_weight.last().map(|r| r.weight).unwrap_or(0) => Some(t + 1),
        None if !report.per_weight.is_empty() => Some(0),
        _ => None,
    };
    Ok(report)
}
