//! Discretized quantile functions on the uniform midpoint grid of (0, 1).
//!
//! A grid of size `n` stores `G^{-1}(u_i)` at `u_i = (2i - 1) / (2n)`. All
//! moments, correlations and distances use the same n-cell uniform measure,
//! so the projection algebra of the solver is exact on the grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Target mean and standard deviation of the moment set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTarget {
    pub mu: f64,
    pub sigma: f64,
}

impl MomentTarget {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidProblem(format!("target mean must be finite, got {mu}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "target sigma must be positive, got {sigma}"
            )));
        }
        Ok(Self { mu, sigma })
    }
}

/// Midpoint `u_i = (2i - 1) / (2n)` for the 1-based cell index `i`.
#[inline]
pub fn midpoint(i: usize, n: usize) -> f64 {
    (2 * i - 1) as f64 / (2 * n) as f64
}

/// All `n` midpoints in increasing order.
pub fn midpoints(n: usize) -> Vec<f64> {
    (1..=n).map(|i| midpoint(i, n)).collect()
}

/// A non-decreasing quantile vector with at least two cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileGrid {
    values: Vec<f64>,
}

impl QuantileGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 cells, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at cell {i}")));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidGrid(format!(
                "values decrease between cells {i} and {}",
                i + 1
            )));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    pub fn std(&self) -> f64 {
        std(&self.values)
    }
}

impl AsRef<[f64]> for QuantileGrid {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Arithmetic mean over the cells.
pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Population covariance under the uniform cell measure.
pub fn cov(a: &[f64], b: &[f64]) -> f64 {
    let ma = mean(a);
    let mb = mean(b);
    a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / a.len() as f64
}

/// Population standard deviation under the uniform cell measure.
pub fn std(v: &[f64]) -> f64 {
    let m = mean(v);
    (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
}

/// `(1/n) <a, b>`.
pub fn inner(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64
}

pub fn grid_mean(q: &QuantileGrid) -> f64 {
    q.mean()
}

pub fn grid_std(q: &QuantileGrid) -> f64 {
    q.std()
}

/// Affine map `mu + sigma * (v - mean) / std`, applied to any vector.
pub(crate) fn standardize_slice(v: &[f64], target: MomentTarget) -> Result<Vec<f64>> {
    let m = mean(v);
    let s = std(v);
    if !(s > 0.0) {
        return Err(Error::DegenerateGrid);
    }
    Ok(v.iter().map(|x| target.mu + target.sigma * ((x - m) / s)).collect())
}

/// Rescale a grid to mean `t.mu` and standard deviation `t.sigma`.
///
/// The map is increasing, and floating-point rounding is monotone, so the
/// output stays non-decreasing.
pub fn standardize_to(q: &QuantileGrid, t: MomentTarget) -> Result<QuantileGrid> {
    let values = standardize_slice(q.values(), t)?;
    Ok(QuantileGrid { values })
}

/// Squared 2-Wasserstein distance between two grids: `(1/n) sum (a_i - b_i)^2`.
pub fn wasserstein2_sq(a: &QuantileGrid, b: &QuantileGrid) -> Result<f64> {
    check_len(a.len(), b.len())?;
    Ok(sq_dist(a.values(), b.values()))
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64
}

/// Pearson correlation over the cells. Accepts grids or raw weight vectors.
pub fn corr(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    let sa = std(a);
    let sb = std(b);
    if !(sa > 0.0 && sb > 0.0) {
        return Err(Error::DegenerateGrid);
    }
    Ok((cov(a, b) / (sa * sb)).clamp(-1.0, 1.0))
}

pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::GridSizeMismatch { left, right });
    }
    Ok(())
}

pub(crate) fn is_non_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0])
}
