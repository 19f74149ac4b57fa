//! Reference distributions `F` and their discretization.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use super::grid::{self, MomentTarget, QuantileGrid};
use super::normal::inverse_normal_cdf;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReferenceKind {
    Normal { mean: f64, std: f64 },
    Uniform { lo: f64, hi: f64 },
    /// Sorted ascending; each sample carries mass `1/m`.
    Empirical { samples: Vec<f64> },
    /// Each cell of the table carries mass `1/m`.
    Tabulated { grid: QuantileGrid },
}

/// The reference law `F` with its cached mean and standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceDistribution {
    kind: ReferenceKind,
    mu_f: f64,
    sigma_f: f64,
}

impl ReferenceDistribution {
    pub fn normal(mean: f64, std: f64) -> Result<Self> {
        if !mean.is_finite() || !(std.is_finite() && std > 0.0) {
            return Err(Error::InvalidReference(format!(
                "normal needs finite mean and positive std, got ({mean}, {std})"
            )));
        }
        Ok(Self {
            kind: ReferenceKind::Normal { mean, std },
            mu_f: mean,
            sigma_f: std,
        })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidReference(format!(
                "uniform needs lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Self {
            kind: ReferenceKind::Uniform { lo, hi },
            mu_f: 0.5 * (lo + hi),
            sigma_f: (hi - lo) / 12f64.sqrt(),
        })
    }

    /// Empirical law of the samples. Ties are fine; a constant sample is not.
    pub fn empirical(mut samples: Vec<f64>) -> Result<Self> {
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidReference(format!("sample {i} is not finite")));
        }
        samples.sort_by(f64::total_cmp);
        if samples.len() < 2 || samples.first() == samples.last() {
            return Err(Error::InvalidReference(
                "empirical reference needs at least 2 distinct values (sigma_F > 0)".into(),
            ));
        }
        let mu_f = grid::mean(&samples);
        let sigma_f = grid::std(&samples);
        Ok(Self {
            kind: ReferenceKind::Empirical { samples },
            mu_f,
            sigma_f,
        })
    }

    pub fn tabulated(grid: QuantileGrid) -> Result<Self> {
        let mu_f = grid.mean();
        let sigma_f = grid.std();
        if !(sigma_f > 0.0) {
            return Err(Error::InvalidReference("tabulated grid is constant".into()));
        }
        Ok(Self {
            kind: ReferenceKind::Tabulated { grid },
            mu_f,
            sigma_f,
        })
    }

    pub fn kind(&self) -> &ReferenceKind {
        &self.kind
    }

    pub fn mu_f(&self) -> f64 {
        self.mu_f
    }

    pub fn sigma_f(&self) -> f64 {
        self.sigma_f
    }

    pub fn moments(&self) -> MomentTarget {
        MomentTarget {
            mu: self.mu_f,
            sigma: self.sigma_f,
        }
    }

    /// `F^{-1}` at the midpoint of cell `i` (1-based) of an `n`-cell grid.
    fn cell_quantile(&self, i: usize, n: usize) -> f64 {
        match &self.kind {
            ReferenceKind::Normal { mean, std } => {
                mean + std * inverse_normal_cdf(grid::midpoint(i, n))
            }
            ReferenceKind::Uniform { lo, hi } => lo + (hi - lo) * grid::midpoint(i, n),
            ReferenceKind::Empirical { samples } => step_quantile(samples, i, n),
            ReferenceKind::Tabulated { grid } => step_quantile(grid.values(), i, n),
        }
    }

    /// Discretize `F^{-1}` at the `n` midpoints.
    pub fn sample_quantile(&self, n: usize) -> Result<QuantileGrid> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 cells, got {n}")));
        }
        QuantileGrid::new((1..=n).map(|i| self.cell_quantile(i, n)).collect())
    }

    /// The grid the solver works with: `sample_quantile` affinely corrected so
    /// its grid mean and standard deviation equal `(mu_F, sigma_F)` exactly.
    ///
    /// Midpoint grids of unbounded laws understate the spread (about 7e-5
    /// relative for a normal at n = 10^4); the correction keeps
    /// "matched moments" meaning `eps_min = 0` on the grid.
    pub fn reference_grid(&self, n: usize) -> Result<QuantileGrid> {
        let raw = self.sample_quantile(n)?;
        grid::standardize_to(&raw, self.moments())
    }
}

/// Left-continuous step quantile of `m` equal atoms evaluated at the midpoint
/// of cell `i` of `n`: the atom index is `ceil(m (2i - 1) / (2n))`, computed in
/// integers so ties between cell and atom boundaries are exact.
fn step_quantile(atoms: &[f64], i: usize, n: usize) -> f64 {
    let m = atoms.len();
    let num = m * (2 * i - 1);
    let k = num.div_ceil(2 * n);
    atoms[k.clamp(1, m) - 1]
}

/// Squared distance between `F` and a grid with moments `t`, through the
/// decomposition `(mu_F - mu)^2 + (sigma_F - sigma)^2 + 2 sigma sigma_F (1 - corr)`.
pub fn wasserstein2_sq_decomposed(
    f: &ReferenceDistribution,
    g: &QuantileGrid,
    t: MomentTarget,
) -> Result<f64> {
    let (mean, std) = (g.mean(), g.std());
    if (mean - t.mu).abs() > 1e-8 * t.mu.abs().max(1.0)
        || (std - t.sigma).abs() > 1e-8 * t.sigma
    {
        return Err(Error::MomentMismatch {
            mean,
            std,
            mu: t.mu,
            sigma: t.sigma,
        });
    }
    let fgrid = f.reference_grid(g.len())?;
    let rho = grid::corr(fgrid.values(), g.values())?;
    Ok(distance_from_corr(f.moments(), t, rho))
}

/// `(mu_F - mu)^2 + (sigma_F - sigma)^2 + 2 sigma sigma_F (1 - corr)`.
pub(crate) fn distance_from_corr(f: MomentTarget, t: MomentTarget, corr: f64) -> f64 {
    let eps_min = (f.mu - t.mu).powi(2) + (f.sigma - t.sigma).powi(2);
    eps_min + 2.0 * t.sigma * f.sigma * (1.0 - corr)
}

/// Read one numeric column from CSV text.
///
/// Accepts either one bare value per line, or a header row that contains a
/// column named `column` (case-insensitive). Blank lines are skipped.
pub fn read_numeric_column<R: Read>(reader: R, column: &str) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut values = Vec::new();
    let mut col: Option<usize> = None;
    let mut first = true;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if first {
            first = false;
            let looks_numeric = record.len() == 1 && record[0].parse::<f64>().is_ok();
            if !looks_numeric {
                let idx = record
                    .iter()
                    .position(|h| h.eq_ignore_ascii_case(column))
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: format!("header has no `{column}` column"),
                    })?;
                col = Some(idx);
                continue;
            }
        }
        let idx = col.unwrap_or(0);
        if col.is_none() && record.len() != 1 {
            return Err(Error::Parse {
                line,
                message: format!("expected one value per line, got {} fields", record.len()),
            });
        }
        let field = record.get(idx).ok_or_else(|| Error::Parse {
            line,
            message: format!("missing `{column}` field"),
        })?;
        let value: f64 = field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("not a number: {field:?}"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("not a finite number: {field:?}"),
            });
        }
        values.push(value);
    }
    Ok(values)
}

/// Load an empirical reference from a CSV of losses.
pub fn load_empirical(path: impl AsRef<Path>) -> Result<ReferenceDistribution> {
    let file = std::fs::File::open(path.as_ref())?;
    let samples = read_numeric_column(file, "loss")?;
    ReferenceDistribution::empirical(samples)
}
