//! Brute-force check of the solver on the discretized problem.
//!
//! Random feasible quantile grids give an upper-bound test (none may beat the
//! closed form) and projected ascent from the best of them gives a lower bound
//! (it should come close). Both only ever evaluate the grid objective.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist_core::grid::{self, MomentTarget, QuantileGrid};
use crate::error::{Error, Result};
use crate::isotonic::isotonic_project;
use crate::solver::{ProblemSpec, Regime, Solver};

/// Samples exceeding the closed form by more than this count as violations.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Rejection attempts per sample before giving up on a tight ball.
pub const MAX_ATTEMPTS: usize = 1000;

/// Grid size used for verification unless the caller asks otherwise.
pub const DEFAULT_ORACLE_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub samples: usize,
    pub ascent_iters: usize,
    pub step: f64,
    pub seed: u64,
    pub ascent_runs: usize,
    pub gap_tolerance: f64,
    /// Added to the solver's value before comparison; non-zero only to
    /// exercise the harness itself.
    pub corrupt_offset: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            ascent_iters: 500,
            step: 0.1,
            seed: 0,
            ascent_runs: 10,
            gap_tolerance: 1e-2,
            corrupt_offset: 0.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.ascent_iters == 0 || self.ascent_runs == 0 {
            return Err(Error::InvalidProblem(
                "oracle samples, ascent_iters and ascent_runs must be positive".into(),
            ));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidProblem(format!("oracle step must be positive, got {}", self.step)));
        }
        if !(self.gap_tolerance.is_finite() && self.gap_tolerance > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "gap tolerance must be positive, got {}",
                self.gap_tolerance
            )));
        }
        if !self.corrupt_offset.is_finite() {
            return Err(Error::InvalidProblem("corrupt offset must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub regime: Regime,
    pub best_value: f64,
    pub best_grid: QuantileGrid,
    pub best_distance_sq: f64,
    pub closed_form_value: f64,
    /// `closed_form_value - best_value`.
    pub gap: f64,
    pub violations: usize,
    /// Largest `value - closed_form_value` over all sampled and ascended grids.
    pub max_excess: f64,
    pub samples: usize,
    pub ascent_runs: usize,
    pub passed: bool,
}

/// Feasibility geometry shared by sampling and ascent.
struct Geometry<'a> {
    solver: &'a Solver,
    target: MomentTarget,
    delta: f64,
    radius_sq: Option<f64>,
    /// `mu + (sigma / sigma_F)(F^{-1} - mu_F)`.
    aligned: Vec<f64>,
}

impl<'a> Geometry<'a> {
    fn new(solver: &'a Solver) -> Self {
        Self {
            solver,
            target: solver.target(),
            delta: solver.delta(),
            radius_sq: solver.spec().radius_sq,
            aligned: solver.aligned_grid().into_values(),
        }
    }

    fn objective(&self, q: &[f64]) -> f64 {
        self.solver.raw_objective(q, self.delta)
    }

    fn dist(&self, q: &[f64]) -> f64 {
        grid::sq_dist(self.solver.reference_grid().values(), q)
    }

    fn feasible(&self, q: &[f64]) -> bool {
        self.radius_sq.is_none_or(|eps| self.dist(q) <= eps)
    }

    /// `standardize((1 - lam) q + lam * aligned)`; `q` must already carry the target moments.
    fn mix(&self, q: &[f64], lam: f64) -> Option<Vec<f64>> {
        let m: Vec<f64> = q
            .iter()
            .zip(&self.aligned)
            .map(|(a, b)| (1.0 - lam) * a + lam * b)
            .collect();
        grid::standardize_slice(&m, self.target).ok()
    }

    /// Squared distance of `mix(q, lam)` from the scalar covariances, O(1).
    fn mixed_dist(&self, lam: f64, cov_qf: f64, cov_qa: f64) -> f64 {
        let s = self.target.sigma;
        let sf = self.solver.sigma_f();
        let var = s * s * ((1.0 - lam).powi(2) + lam * lam) + 2.0 * lam * (1.0 - lam) * cov_qa;
        let cov = (1.0 - lam) * cov_qf + lam * s * sf;
        let corr = (cov / (sf * var.sqrt())).clamp(-1.0, 1.0);
        self.solver.eps_min() + 2.0 * s * sf * (1.0 - corr)
    }

    /// Smallest mixing weight that brings `q` into the ball (bisection).
    fn retract(&self, q: Vec<f64>) -> Option<Vec<f64>> {
        let Some(eps) = self.radius_sq else {
            return Some(q);
        };
        if self.dist(&q) <= eps {
            return Some(q);
        }
        let f = self.solver.reference_grid().values();
        let cov_qf = grid::cov(&q, f);
        let cov_qa = grid::cov(&q, &self.aligned);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.mixed_dist(mid, cov_qf, cov_qa) <= eps {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // Guard against rounding in the scalar formula.
        let mut lam = hi;
        for _ in 0..60 {
            let m = self.mix(&q, lam)?;
            if self.dist(&m) <= eps {
                return Some(m);
            }
            lam = 0.5 * (lam + 1.0);
        }
        None
    }

    /// A random non-decreasing base shape with the target moments.
    fn random_shape(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.aligned.len();
        loop {
            let power = rng.random_range(0.0..3.0);
            let tilt = rng.random_range(-6.0..6.0);
            let sparse = rng.random_bool(0.15);
            let keep = rng.random_range(0.02..0.3);
            let mut level = 0.0;
            let values: Vec<f64> = (0..n)
                .map(|i| {
                    let u = grid::midpoint(i + 1, n);
                    let e: f64 = -(1.0 - rng.random::<f64>()).ln();
                    let mut inc = e.powf(power) * (tilt * u).exp();
                    if sparse && rng.random::<f64>() > keep {
                        inc = 0.0;
                    }
                    level += inc;
                    level
                })
                .collect();
            if let Ok(v) = grid::standardize_slice(&values, self.target) {
                return v;
            }
        }
    }
}

/// One random grid with the target moments (and inside the ball, if any).
pub fn sample_feasible(solver: &Solver, rng: &mut ChaCha8Rng) -> Result<QuantileGrid> {
    let geo = Geometry::new(solver);
    sample_with(&geo, rng).map(QuantileGrid::new)?
}

fn sample_with(geo: &Geometry, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    if geo.aligned.len() < 3 {
        return Err(Error::InvalidGrid("oracle sampling needs n >= 3".into()));
    }
    let lam0: f64 = rng.random();
    for attempt in 0..MAX_ATTEMPTS {
        let lam = 1.0 - (1.0 - lam0) * 0.97f64.powi(attempt as i32);
        let base = geo.random_shape(rng);
        if let Some(q) = geo.mix(&base, lam) {
            if geo.feasible(&q) {
                return Ok(q);
            }
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Projected gradient ascent from a feasible start. Steps that do not improve
/// the objective are rejected and the step shrinks, so the result is never
/// worse than `start`.
pub fn projected_ascent(solver: &Solver, start: &QuantileGrid, cfg: &OracleConfig) -> QuantileGrid {
    let geo = Geometry::new(solver);
    let out = ascend(&geo, start.values().to_vec(), cfg);
    QuantileGrid::new(out).unwrap_or_else(|_| start.clone())
}

fn ascend(geo: &Geometry, start: Vec<f64>, cfg: &OracleConfig) -> Vec<f64> {
    let gamma = geo.solver.gamma().weights();
    let f = geo.solver.reference_grid().values();
    let mut q = start;
    let mut value = geo.objective(&q);
    let mut step = cfg.step;
    for _ in 0..cfg.ascent_iters {
        let moved: Vec<f64> = q
            .iter()
            .zip(gamma)
            .zip(f)
            .map(|((qi, g), fi)| qi + step * (g - 2.0 * geo.delta * (qi - fi)))
            .collect();
        let projected = isotonic_project(&moved).projected;
        let candidate = grid::standardize_slice(&projected, geo.target)
            .ok()
            .and_then(|c| geo.retract(c));
        match candidate {
            Some(c) if geo.objective(&c) > value => {
                let next = geo.objective(&c);
                let gain = next - value;
                q = c;
                value = next;
                if gain < 1e-12 {
                    break;
                }
                step = (step * 2.0).min(1e8);
            }
            _ => {
                step *= 0.5;
                if step < 1e-14 {
                    break;
                }
            }
        }
    }
    q
}

/// Run the oracle against the solver's answer for `spec`.
pub fn verify(spec: &ProblemSpec, cfg: &OracleConfig) -> Result<OracleReport> {
    verify_solver(&Solver::new(spec)?, cfg)
}

/// Like [`verify`] but returns the report whether or not it passed.
pub fn run(solver: &Solver, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let solution = solver.solve()?;
    let closed = solution.value + cfg.corrupt_offset;
    let geo = Geometry::new(solver);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    // Best `ascent_runs` samples, kept sorted by decreasing value.
    let mut top: Vec<(f64, Vec<f64>)> = Vec::with_capacity(cfg.ascent_runs + 1);
    for _ in 0..cfg.samples {
        let q = sample_with(&geo, &mut rng)?;
        let v = geo.objective(&q);
        if v - closed > VIOLATION_TOL {
            violations += 1;
        }
        max_excess = max_excess.max(v - closed);
        if top.len() < cfg.ascent_runs || v > top[top.len() - 1].0 {
            let pos = top.partition_point(|(w, _)| *w >= v);
            top.insert(pos, (v, q));
            top.truncate(cfg.ascent_runs);
        }
    }

    let mut best = top[0].clone();
    for (_, start) in &top {
        let q = ascend(&geo, start.clone(), cfg);
        let v = geo.objective(&q);
        if v - closed > VIOLATION_TOL {
            violations += 1;
        }
        max_excess = max_excess.max(v - closed);
        if v > best.0 {
            best = (v, q);
        }
    }

    let gap = closed - best.0;
    let best_distance_sq = geo.dist(&best.1);
    Ok(OracleReport {
        regime: solution.regime,
        best_value: best.0,
        best_grid: QuantileGrid::new(best.1)?,
        best_distance_sq,
        closed_form_value: closed,
        gap,
        violations,
        max_excess,
        samples: cfg.samples,
        ascent_runs: top.len(),
        passed: violations == 0 && gap <= cfg.gap_tolerance,
    })
}

/// Run the oracle; a failing report becomes [`Error::VerificationFailed`].
pub fn verify_solver(solver: &Solver, cfg: &OracleConfig) -> Result<OracleReport> {
    let report = run(solver, cfg)?;
    if report.passed {
        Ok(report)
    } else {
        Err(Error::VerificationFailed {
            report: Box::new(report),
        })
    }
}
