//! Distortion functions and their spectral weights on the grid.
//!
//! `H_g(G) = ∫ γ(u) G^{-1}(u) du` with `γ(u) = g'(1 - u)`. On an `n`-cell grid
//! the weight of cell `i` is the cell average of `γ`, i.e.
//! `n [g(1 - (i-1)/n) - g(1 - i/n)]`. Weights therefore telescope to a mean of
//! exactly one, including for discontinuous `γ` (CVaR, VaR).

use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::dist_core::grid::{self, QuantileGrid};
use crate::dist_core::reference::read_numeric_column;
use crate::error::{Error, Result};

/// Tolerance of the monotone-weights concavity test.
pub const CONCAVITY_TOL: f64 = 1e-12;

/// Spectral weights with `std` at or below this count as constant.
pub const SIGMA0_MIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistortionSpec {
    /// `g(x) = min(x / (1 - alpha), 1)`.
    Cvar { alpha: f64 },
    /// `g(x) = 1{x > 1 - alpha}`; the continuum weight is a point mass.
    Var { alpha: f64 },
    /// `g(x) = 1 - (1 - x)^beta`.
    DualPower { beta: f64 },
    /// Linear interpolation through `(x, g(x))` knots from `(0, 0)` to `(1, 1)`.
    PiecewiseLinear { knots: Vec<(f64, f64)> },
    /// Explicit spectral weights over equal cells of `(0, 1)` in `u`.
    GammaTable { weights: Vec<f64> },
}

impl DistortionSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDistortion(msg));
        match self {
            Self::Cvar { alpha } | Self::Var { alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return bad(format!("alpha must lie in (0, 1), got {alpha}"));
                }
            }
            Self::DualPower { beta } => {
                if !(beta.is_finite() && *beta >= 1.0) {
                    return bad(format!("dual power beta must be >= 1, got {beta}"));
                }
            }
            Self::PiecewiseLinear { knots } => {
                if knots.len() < 2 {
                    return bad("piecewise distortion needs at least two knots".into());
                }
                if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
                    return bad("knots must be finite".into());
                }
                if knots[0] != (0.0, 0.0) || knots[knots.len() - 1] != (1.0, 1.0) {
                    return bad("knots must start at (0,0) and end at (1,1)".into());
                }
                for w in knots.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return bad(format!("knot x values must increase ({} then {})", w[0].0, w[1].0));
                    }
                    if w[1].1 < w[0].1 {
                        return bad(format!("g must be non-decreasing ({} then {})", w[0].1, w[1].1));
                    }
                }
            }
            Self::GammaTable { weights } => {
                if weights.len() < 2 {
                    return bad("gamma table needs at least two weights".into());
                }
                if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
                    return bad(format!("gamma weights must be finite and nonnegative, got {w}"));
                }
                let m = grid::mean(weights);
                if (m - 1.0).abs() > 1e-9 {
                    return bad(format!("gamma weights must average to 1, got {m}"));
                }
            }
        }
        Ok(())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Self::Var { .. })
    }

    /// Load a weight table from a CSV with one weight per line (or a `gamma` column).
    pub fn gamma_file(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        let weights = read_numeric_column(file, "gamma")?;
        let spec = Self::GammaTable { weights };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses `cvar:0.7`, `var:0.95`, `dualpower:5`, `piecewise:x1,y1;x2,y2;...`
/// and `gammafile:<path>`.
impl FromStr for DistortionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidDistortion(format!("expected kind:args, got {s:?}")))?;
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidDistortion(format!("not a number: {t:?}")))
        };
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "cvar" | "es" => Self::Cvar { alpha: num(arg)? },
            "var" => Self::Var { alpha: num(arg)? },
            "dualpower" => Self::DualPower { beta: num(arg)? },
            "piecewise" => {
                let knots = arg
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|pair| {
                        let (x, y) = pair.split_once(',').ok_or_else(|| {
                            Error::InvalidDistortion(format!("knot must be x,y: {pair:?}"))
                        })?;
                        Ok((num(x)?, num(y)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::PiecewiseLinear { knots }
            }
            "gammafile" => return Self::gamma_file(arg.trim()),
            other => {
                return Err(Error::InvalidDistortion(format!("unknown distortion kind {other:?}")))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Cell-averaged spectral weights and derived scalars.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaGrid {
    weights: Vec<f64>,
    sigma0: f64,
    is_concave: bool,
    satisfies_a1: bool,
}

impl GammaGrid {
    /// Build from explicit per-cell weights (used for tables that already
    /// match the grid size).
    fn from_weights(weights: Vec<f64>) -> Self {
        let sigma0 = grid::std(&weights);
        let is_concave = weights
            .windows(2)
            .all(|w| w[1] >= w[0] - CONCAVITY_TOL);
        Self {
            satisfies_a1: sigma0 > SIGMA0_MIN,
            weights,
            sigma0,
            is_concave,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    /// Weights non-decreasing in `u` (equivalently `g` concave).
    pub fn is_concave(&self) -> bool {
        self.is_concave
    }

    pub fn satisfies_a1(&self) -> bool {
        self.satisfies_a1
    }
}

/// Spectral weights of `g` on an `n`-cell grid.
pub fn gamma_grid(g: &DistortionSpec, n: usize) -> Result<GammaGrid> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 cells, got {n}")));
    }
    g.validate()?;
    let weights = match g {
        DistortionSpec::Cvar { alpha } => {
            piecewise_weights(&[(0.0, 0.0), (1.0 - alpha, 1.0), (1.0, 1.0)], n)
        }
        DistortionSpec::Var { alpha } => {
            // g jumps at x = 1 - alpha, i.e. the cell with (i-1)/n < alpha <= i/n.
            let cell = ((alpha * n as f64).ceil() as usize).clamp(1, n);
            let mut w = vec![0.0; n];
            w[cell - 1] = n as f64;
            w
        }
        DistortionSpec::DualPower { beta } => dual_power_weights(*beta, n),
        DistortionSpec::PiecewiseLinear { knots } => piecewise_weights(knots, n),
        DistortionSpec::GammaTable { weights } => resample_table(weights, n),
    };
    Ok(GammaGrid::from_weights(weights))
}

/// `g(1 - u) = 1 - u^beta`, so the cell weight is `(i^beta - (i-1)^beta) / n^(beta-1)`.
fn dual_power_weights(beta: f64, n: usize) -> Vec<f64> {
    if beta == 1.0 {
        return vec![1.0; n];
    }
    let scale = (n as f64).powf(beta - 1.0);
    (1..=n)
        .map(|i| ((i as f64).powf(beta) - ((i - 1) as f64).powf(beta)) / scale)
        .collect()
}

/// Cell averages of the slopes of a piecewise-linear `g`.
///
/// Cell `i` in `u` is `[n - i, n - i + 1] / n` in `x`. Overlaps are measured in
/// units of `1/n`, so a cell that lies inside one segment gets weight equal
/// to that segment's slope with no rounding noise.
fn piecewise_weights(knots: &[(f64, f64)], n: usize) -> Vec<f64> {
    let nf = n as f64;
    let segments: Vec<(f64, f64, f64)> = knots
        .windows(2)
        .map(|w| {
            let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            (w[0].0 * nf, w[1].0 * nf, slope)
        })
        .collect();
    (1..=n)
        .map(|i| {
            let lo = (n - i) as f64;
            let hi = lo + 1.0;
            segments
                .iter()
                .filter(|(a, b, _)| *b > lo && *a < hi)
                .map(|&(a, b, slope)| {
                    let overlap = if a <= lo && hi <= b { 1.0 } else { b.min(hi) - a.max(lo) };
                    slope * overlap
                })
                .sum()
        })
        .collect()
}

/// Average an `m`-cell table onto `n` cells. Overlaps of `[(i-1)/n, i/n]` and
/// `[(j-1)/m, j/m]` are integers in units of `1/(nm)`.
fn resample_table(table: &[f64], n: usize) -> Vec<f64> {
    let m = table.len();
    if m == n {
        return table.to_vec();
    }
    (1..=n)
        .map(|i| {
            let (lo, hi) = ((i - 1) * m, i * m);
            let first = lo / n; // 0-based table index containing lo
            let last = (hi - 1) / n;
            (first..=last)
                .map(|j| {
                    let (a, b) = (j * n, (j + 1) * n);
                    let overlap = b.min(hi) - a.max(lo);
                    table[j] * overlap as f64
                })
                .sum::<f64>()
                / m as f64
        })
        .collect()
}

/// `H_g(G) = (1/n) Σ γ_i q_i`.
pub fn distortion_value(gamma: &GammaGrid, q: &QuantileGrid) -> Result<f64> {
    grid::check_len(gamma.n(), q.len())?;
    Ok(grid::inner(gamma.weights(), q.values()))
}

/// Pearson correlation between the reference grid and the spectral weights.
pub fn rho(gamma: &GammaGrid, fgrid: &QuantileGrid) -> Result<f64> {
    if !gamma.satisfies_a1() {
        return Err(Error::AssumptionA1Violated);
    }
    grid::corr(fgrid.values(), gamma.weights())
}
