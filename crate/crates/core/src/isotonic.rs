//! Least-squares projection onto non-decreasing vectors (uniform weights).

use serde::Serialize;

use crate::dist_core::grid;

/// A run of pooled cells `start..end` (half-open) sharing one fitted level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotonicResult {
    pub projected: Vec<f64>,
    pub blocks: Vec<Block>,
}

/// Pool-adjacent-violators, O(n).
///
/// Each block keeps its sum and length; a new value is pushed as its own block
/// and merged backwards while the previous level exceeds the current one.
pub fn isotonic_project(v: &[f64]) -> IsotonicResult {
    // (start, len, sum)
    let mut stack: Vec<(usize, usize, f64)> = Vec::with_capacity(v.len());
    for (i, &x) in v.iter().enumerate() {
        let mut cur = (i, 1usize, x);
        while let Some(&(start, len, sum)) = stack.last() {
            if sum / len as f64 > cur.2 / cur.1 as f64 {
                stack.pop();
                cur = (start, len + cur.1, sum + cur.2);
            } else {
                break;
            }
        }
        stack.push(cur);
    }

    let mut projected = Vec::with_capacity(v.len());
    let blocks = stack
        .into_iter()
        .map(|(start, len, sum)| {
            let level = sum / len as f64;
            projected.extend(std::iter::repeat_n(level, len));
            Block {
                start,
                end: start + len,
                level,
            }
        })
        .collect();
    IsotonicResult { projected, blocks }
}

/// `(1/n) ||v - projected||^2`.
pub fn projection_gap(v: &[f64], result: &IsotonicResult) -> f64 {
    grid::sq_dist(v, &result.projected)
}
