//! Numerical check of the monotonicity conditions the general path relies on:
//!
//! (a) `delta -> corr(F^{-1}, r_delta)` is increasing;
//! (b) for each `delta`, `delta' -> corr(gamma + 2 delta F^{-1}, r_{delta'})`
//!     is non-increasing on `delta' > delta`.

use serde::Serialize;

use super::{ProblemSpec, Solver, MONOTONE_TOL};
use crate::dist_core::grid;
use crate::distortion::gamma_grid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum A4Status {
    Pass,
    Fail,
    /// The weights are constant, so there is nothing to check.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct A4Violation {
    /// `'a'` or `'b'`.
    pub part: char,
    /// For part (b), the penalty whose score is correlated with `r_{delta'}`.
    pub anchor: Option<f64>,
    pub delta_lo: f64,
    pub value_lo: f64,
    pub delta_hi: f64,
    pub value_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct A4Report {
    pub status: A4Status,
    pub concave: bool,
    pub part_a: bool,
    pub part_b: bool,
    pub first_violation: Option<A4Violation>,
}

/// 25 log-spaced penalties from 0.01 to 10.
pub fn default_a4_grid() -> Vec<f64> {
    let k = 25;
    (0..k)
        .map(|i| 0.01 * 1000f64.powf(i as f64 / (k - 1) as f64))
        .collect()
}

/// Evaluate both conditions over `delta_grid` (sorted and deduplicated first).
pub fn check_assumption_a4(spec: &ProblemSpec, delta_grid: &[f64]) -> Result<A4Report> {
    let gamma = gamma_grid(&spec.distortion, spec.n)?;
    if !gamma.satisfies_a1() {
        return Ok(A4Report {
            status: A4Status::NotApplicable,
            concave: gamma.is_concave(),
            part_a: false,
            part_b: false,
            first_violation: None,
        });
    }
    let mut spec = spec.clone();
    spec.options.allow_var = true;
    let solver = Solver::new(&spec)?;
    Ok(check_solver_a4(&solver, delta_grid))
}

pub(crate) fn check_solver_a4(solver: &Solver, delta_grid: &[f64]) -> A4Report {
    let mut deltas: Vec<f64> = delta_grid
        .iter()
        .copied()
        .filter(|d| d.is_finite() && *d > 0.0)
        .collect();
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();

    let fvals = solver.fgrid.values();
    let projected: Vec<Vec<f64>> = deltas.iter().map(|&d| solver.score(d).values).collect();
    let corr_or_zero = |a: &[f64], b: &[f64]| grid::corr(a, b).unwrap_or(0.0);

    let mut first_violation = None;

    let corr_a: Vec<f64> = projected.iter().map(|r| corr_or_zero(fvals, r)).collect();
    let mut part_a = true;
    for k in 1..deltas.len() {
        if corr_a[k] < corr_a[k - 1] - MONOTONE_TOL {
            part_a = false;
            first_violation.get_or_insert(A4Violation {
                part: 'a',
                anchor: None,
                delta_lo: deltas[k - 1],
                value_lo: corr_a[k - 1],
                delta_hi: deltas[k],
                value_hi: corr_a[k],
            });
            break;
        }
    }

    let mut part_b = true;
    'outer: for (i, &anchor) in deltas.iter().enumerate() {
        let raw: Vec<f64> = solver
            .gamma
            .weights()
            .iter()
            .zip(fvals)
            .map(|(g, f)| g + 2.0 * anchor * f)
            .collect();
        let mut prev: Option<(f64, f64)> = None;
        for j in i + 1..deltas.len() {
            let c = corr_or_zero(&raw, &projected[j]);
            if let Some((dp, cp)) = prev {
                if c > cp + MONOTONE_TOL {
                    part_b = false;
                    first_violation.get_or_insert(A4Violation {
                        part: 'b',
                        anchor: Some(anchor),
                        delta_lo: dp,
                        value_lo: cp,
                        delta_hi: deltas[j],
                        value_hi: c,
                    });
                    break 'outer;
                }
            }
            prev = Some((deltas[j], c));
        }
    }

    A4Report {
        status: if part_a && part_b { A4Status::Pass } else { A4Status::Fail },
        concave: !solver.general,
        part_a,
        part_b,
        first_violation,
    }
}

impl Solver {
    pub fn check_assumption_a4(&self, delta_grid: &[f64]) -> A4Report {
        check_solver_a4(self, delta_grid)
    }
}

impl A4Report {
    pub fn into_result(self) -> Result<Self> {
        match self.first_violation {
            Some(v) => Err(Error::AssumptionA4Violated {
                delta_lo: v.delta_lo,
                corr_lo: v.value_lo,
                delta_hi: v.delta_hi,
                corr_hi: v.value_hi,
            }),
            None => Ok(self),
        }
    }
}
