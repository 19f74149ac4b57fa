//! Optimal quantiles, values and thresholds for
//! `sup_{G in N} H_g(G) - delta * d_W^2(F, G)` over the moment set and the
//! Wasserstein ball.
//!
//! Everything is evaluated on the discretized problem: the reference grid,
//! the spectral weights and every candidate quantile share one `n`-cell
//! uniform measure, so the closed forms below are exact for the grid problem.
//!
//! Two paths share this type. The concave path (non-decreasing weights) uses
//! the correlation map `f(delta)` and its closed-form inverse. The general
//! path replaces the score `gamma + 2 delta F^{-1}` by its isotonic projection
//! and finds thresholds by bisection.

mod assumption;
mod solve;

use std::sync::OnceLock;

use serde::Serialize;

pub use assumption::{check_assumption_a4, default_a4_grid, A4Report, A4Status, A4Violation};

use crate::dist_core::grid::{self, MomentTarget, QuantileGrid};
use crate::dist_core::reference::ReferenceDistribution;
use crate::distortion::{gamma_grid, DistortionSpec, GammaGrid};
use crate::error::{Error, Result};
use crate::isotonic::isotonic_project;

/// Correlations at or above `1 - RHO_DEGENERATE_TOL` make the ball problem trivial.
pub const RHO_DEGENERATE_TOL: f64 = 1e-9;

/// Relative band around `eps_min` classified as the degenerate one-point ball.
pub const EPS_MIN_TOL: f64 = 1e-9;

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-10;

/// Slack allowed when checking that a correlation map is monotone.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Default number of grid cells.
pub const DEFAULT_GRID_N: usize = 10_000;

/// Linear penalty `phi(x) = delta * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenaltySpec {
    pub delta: f64,
}

impl PenaltySpec {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self { delta })
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::InvalidProblem(format!(
            "penalty delta must be finite and >= 0, got {delta}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Accept VaR distortions, whose grid weights depend on the discretization.
    pub allow_var: bool,
    /// Use isotonic projection and bisection even when the weights are monotone.
    pub force_general: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSpec {
    pub reference: ReferenceDistribution,
    pub distortion: DistortionSpec,
    pub target: MomentTarget,
    pub penalty: PenaltySpec,
    /// Squared ball radius `epsilon`; `None` means the moment set alone.
    pub radius_sq: Option<f64>,
    pub n: usize,
    pub options: SolverOptions,
}

impl ProblemSpec {
    pub fn new(
        reference: ReferenceDistribution,
        distortion: DistortionSpec,
        target: MomentTarget,
        delta: f64,
        radius_sq: Option<f64>,
        n: usize,
    ) -> Result<Self> {
        let spec = Self {
            reference,
            distortion,
            target,
            penalty: PenaltySpec::new(delta)?,
            radius_sq,
            n,
            options: SolverOptions::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_options(mut self, options: SolverOptions) -> Self {
        self.options = options;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_delta(self.penalty.delta)?;
        MomentTarget::new(self.target.mu, self.target.sigma)?;
        if let Some(eps) = self.radius_sq {
            if eps.is_nan() {
                return Err(Error::InvalidProblem("radius is NaN".into()));
            }
        }
        if self.n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 cells, got {}", self.n)));
        }
        self.distortion.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `epsilon < eps_min`: the ball misses the moment set.
    Infeasible,
    /// `epsilon = eps_min` (or correlation one): a single admissible law.
    Degenerate,
    /// The penalized optimum already lies inside the ball.
    Interior,
    /// The optimum sits on the ball's surface.
    Boundary,
    /// `epsilon >= eps_max`: the ball constraint never binds.
    Unconstrained,
    /// No ball constraint at all.
    MomentOnly,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub eps_min: f64,
    /// `eps_max` on the concave path, `eps_max_hat` on the general path.
    pub eps_max: f64,
    /// `corr(F^{-1}, gamma)`, or `corr(F^{-1}, r_0)` on the general path.
    pub rho: f64,
    pub sigma0: f64,
    /// Standard deviation of the (projected) score at the penalty `delta`.
    pub sigma_delta: f64,
    pub mu_delta: f64,
    pub delta_star: Option<f64>,
    pub eps_star: Option<f64>,
    /// The score went through isotonic projection (always true on the
    /// general path, even where the projection leaves it unchanged).
    pub used_isotonic: bool,
    pub concave: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub regime: Regime,
    pub optimal_quantile: QuantileGrid,
    /// `H_g(G) - delta * d_W^2(F, G)` at the optimum.
    pub value: f64,
    /// `H_g(G)` at the optimum.
    pub risk_part: f64,
    pub achieved_distance_sq: f64,
    pub diagnostics: SolverDiagnostics,
    pub warnings: Vec<String>,
}

/// `gamma + 2 delta F^{-1}`, projected when it is not already monotone.
#[derive(Debug, Clone)]
pub(crate) struct Score {
    pub values: Vec<f64>,
    pub used_isotonic: bool,
}

/// A problem discretized once and ready to answer any number of queries.
#[derive(Debug, Clone)]
pub struct Solver {
    spec: ProblemSpec,
    fgrid: QuantileGrid,
    gamma: GammaGrid,
    mu_f: f64,
    sigma_f: f64,
    eps_min: f64,
    general: bool,
    /// `corr(F^{-1}, gamma)`.
    rho: f64,
    /// `corr(F^{-1}, r_0)`; equals `rho` on the concave path.
    rho_eff: f64,
    /// A4 check on the default grid, computed on first use by a ball solve.
    a4: OnceLock<A4Report>,
}

impl Solver {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        spec.validate()?;
        if spec.distortion.is_var() && !spec.options.allow_var {
            return Err(Error::VarRequiresOverride);
        }
        let gamma = gamma_grid(&spec.distortion, spec.n)?;
        if !gamma.satisfies_a1() {
            return Err(Error::AssumptionA1Violated);
        }
        let fgrid = spec.reference.reference_grid(spec.n)?;
        let mu_f = spec.reference.mu_f();
        let sigma_f = spec.reference.sigma_f();
        let t = spec.target;
        let eps_min = (mu_f - t.mu).powi(2) + (sigma_f - t.sigma).powi(2);
        let rho = grid::corr(fgrid.values(), gamma.weights())?;
        let general = !gamma.is_concave() || spec.options.force_general;

        let mut solver = Self {
            spec: spec.clone(),
            fgrid,
            gamma,
            mu_f,
            sigma_f,
            eps_min,
            general,
            rho,
            rho_eff: rho,
            a4: OnceLock::new(),
        };
        if general {
            let r0 = solver.score(0.0);
            if !(grid::std(&r0.values) > 0.0) {
                return Err(Error::DegenerateProjection);
            }
            solver.rho_eff = grid::corr(solver.fgrid.values(), &r0.values)?;
        }
        Ok(solver)
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// The moment-matched reference grid.
    pub fn reference_grid(&self) -> &QuantileGrid {
        &self.fgrid
    }

    pub fn gamma(&self) -> &GammaGrid {
        &self.gamma
    }

    pub fn mu_f(&self) -> f64 {
        self.mu_f
    }

    pub fn sigma_f(&self) -> f64 {
        self.sigma_f
    }

    pub fn target(&self) -> MomentTarget {
        self.spec.target
    }

    pub fn delta(&self) -> f64 {
        self.spec.penalty.delta
    }

    pub fn is_general(&self) -> bool {
        self.general
    }

    pub fn sigma0(&self) -> f64 {
        self.gamma.sigma0()
    }

    /// `corr(F^{-1}, gamma)`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `rho` on the concave path, `rho_hat = corr(F^{-1}, r_0)` on the general one.
    pub fn rho_effective(&self) -> f64 {
        self.rho_eff
    }

    pub fn eps_min(&self) -> f64 {
        self.eps_min
    }

    /// `2 sigma sigma_F`, the span of the correlation term in the distance.
    fn spread(&self) -> f64 {
        2.0 * self.spec.target.sigma * self.sigma_f
    }

    /// `(eps_min, eps_max)`; `eps_max` uses `rho_hat` on the general path.
    pub fn epsilon_bounds(&self) -> (f64, f64) {
        (self.eps_min, self.eps_min + self.spread() * (1.0 - self.rho_eff))
    }

    pub(crate) fn score(&self, delta: f64) -> Score {
        let values: Vec<f64> = self
            .gamma
            .weights()
            .iter()
            .zip(self.fgrid.values())
            .map(|(g, f)| g + 2.0 * delta * f)
            .collect();
        if grid::is_non_decreasing(&values) {
            Score {
                values,
                used_isotonic: false,
            }
        } else {
            Score {
                values: isotonic_project(&values).projected,
                used_isotonic: true,
            }
        }
    }

    /// `sigma_delta = std(gamma + 2 delta F^{-1})` from the grid scalars.
    fn sigma_delta_closed(&self, delta: f64) -> f64 {
        let (s0, sf) = (self.sigma0(), self.sigma_f);
        (s0 * s0 + 4.0 * delta * delta * sf * sf + 4.0 * delta * s0 * sf * self.rho).sqrt()
    }

    /// `f(delta) = corr(F^{-1}, gamma + 2 delta F^{-1})` in closed form.
    pub fn f_of_delta(&self, delta: f64) -> Result<f64> {
        check_delta(delta)?;
        if self.general {
            return Err(Error::NotConcave);
        }
        let (s0, sf) = (self.sigma0(), self.sigma_f);
        let num = 2.0 * delta * sf * sf + s0 * sf * self.rho;
        Ok((num / (sf * self.sigma_delta_closed(delta))).min(1.0))
    }

    /// `corr(F^{-1}, r_delta)` on the grid, with `r_delta` the projected score.
    pub fn projected_corr(&self, delta: f64) -> Result<f64> {
        let s = self.score(delta);
        grid::corr(self.fgrid.values(), &s.values)
    }

    /// Correlation between `F^{-1}` and the moment-set optimum at `delta`,
    /// through whichever path this solver uses.
    fn corr_at(&self, delta: f64) -> Result<f64> {
        if self.general {
            self.projected_corr(delta)
        } else {
            self.f_of_delta(delta)
        }
    }

    fn check_rho(&self) -> Result<()> {
        if self.rho_eff >= 1.0 - RHO_DEGENERATE_TOL {
            return Err(Error::RhoDegenerate { rho: self.rho_eff });
        }
        Ok(())
    }

    /// Correlation the optimum must reach to sit exactly at distance `eps`.
    fn target_corr(&self, eps: f64) -> f64 {
        1.0 - (eps - self.eps_min) / self.spread()
    }

    /// Penalty level at which the moment-set optimum sits exactly at distance `eps`.
    pub fn delta_star(&self, eps: f64) -> Result<f64> {
        self.check_rho()?;
        let (eps_min, eps_max) = self.epsilon_bounds();
        if !(eps > eps_min && eps < eps_max) {
            return Err(Error::RadiusOutOfRange {
                eps,
                eps_min,
                eps_max,
            });
        }
        if self.general {
            return self.delta_star_bisect(eps);
        }
        // Solve f(delta) = c. With x = 2 delta sigma_F / sigma0, f = (x + rho) / sqrt(1 + x^2 + 2 x rho),
        // whose increasing branch inverts to x = -rho + sqrt(1 - rho^2) c / sqrt(1 - c^2).
        let spread = self.spread();
        let above = self.eps_min + spread - eps; // spread * c
        let radicand = (self.eps_min + 2.0 * spread - eps) * (eps - self.eps_min); // spread^2 (1 - c^2)
        let rho = self.rho;
        let s0 = self.sigma0();
        let sf = self.sigma_f;
        Ok(-s0 * rho / (2.0 * sf) + s0 * above * (1.0 - rho * rho).sqrt() / (2.0 * sf * radicand.sqrt()))
    }

    /// Bisection on `delta -> corr(F^{-1}, r_delta)`, expanding the bracket
    /// `[0, 2^k]` until the target is straddled.
    fn delta_star_bisect(&self, eps: f64) -> Result<f64> {
        let target = self.target_corr(eps);
        let violated = |dl: f64, cl: f64, dh: f64, ch: f64| Error::AssumptionA4Violated {
            delta_lo: dl,
            corr_lo: cl,
            delta_hi: dh,
            corr_hi: ch,
        };

        let (mut lo, mut c_lo) = (0.0, self.rho_eff);
        let (mut hi, mut c_hi) = (1.0, self.projected_corr(1.0)?);
        let mut expansions = 0;
        loop {
            if c_hi < c_lo - MONOTONE_TOL {
                return Err(violated(lo, c_lo, hi, c_hi));
            }
            if c_hi >= target {
                break;
            }
            expansions += 1;
            if expansions > 80 {
                let (eps_min, eps_max) = self.epsilon_bounds();
                return Err(Error::RadiusOutOfRange {
                    eps,
                    eps_min,
                    eps_max,
                });
            }
            lo = hi;
            c_lo = c_hi;
            hi *= 2.0;
            c_hi = self.projected_corr(hi)?;
        }

        while hi - lo >= BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let c_mid = self.projected_corr(mid)?;
            if c_mid < c_lo - MONOTONE_TOL {
                return Err(violated(lo, c_lo, mid, c_mid));
            }
            if c_mid > c_hi + MONOTONE_TOL {
                return Err(violated(mid, c_mid, hi, c_hi));
            }
            if c_mid < target {
                lo = mid;
                c_lo = c_mid;
            } else {
                hi = mid;
                c_hi = c_mid;
            }
        }
        // One secant step inside the final bracket; the map is smooth there.
        if c_hi > c_lo {
            let t = ((target - c_lo) / (c_hi - c_lo)).clamp(0.0, 1.0);
            return Ok(lo + t * (hi - lo));
        }
        Ok(hi)
    }

    /// Squared distance of the moment-set optimum at penalty `delta`.
    pub fn epsilon_star(&self, delta: f64) -> Result<f64> {
        check_delta(delta)?;
        self.check_rho()?;
        Ok(self.eps_min + self.spread() * (1.0 - self.corr_at(delta)?))
    }

    /// `H_g(q) - delta * d_W^2(F, q)` for a grid with the target moments.
    pub fn objective_eval(&self, q: &QuantileGrid) -> Result<f64> {
        self.objective_eval_at(q, self.delta())
    }

    pub fn objective_eval_at(&self, q: &QuantileGrid, delta: f64) -> Result<f64> {
        grid::check_len(q.len(), self.spec.n)?;
        let t = self.spec.target;
        let (mean, std) = (q.mean(), q.std());
        if (mean - t.mu).abs() > 1e-6 * t.mu.abs().max(1.0) || (std - t.sigma).abs() > 1e-6 * t.sigma {
            return Err(Error::MomentMismatch {
                mean,
                std,
                mu: t.mu,
                sigma: t.sigma,
            });
        }
        Ok(self.raw_objective(q.values(), delta))
    }

    /// Objective without the moment check.
    pub(crate) fn raw_objective(&self, q: &[f64], delta: f64) -> f64 {
        grid::inner(self.gamma.weights(), q) - delta * grid::sq_dist(self.fgrid.values(), q)
    }

    /// Objective at the family member `G_{delta_bar}` under the penalty `delta`
    /// of the problem: `mu - delta (eps_min + 2 sigma sigma_F) + h(delta_bar)`.
    pub fn objective_along_family(&self, delta_bar: f64) -> Result<f64> {
        self.objective_along_family_at(self.delta(), delta_bar)
    }

    pub fn objective_along_family_at(&self, delta: f64, delta_bar: f64) -> Result<f64> {
        check_delta(delta)?;
        check_delta(delta_bar)?;
        if self.general {
            return Err(Error::NotConcave);
        }
        let t = self.spec.target;
        let sf = self.sigma_f;
        let s_bar = self.sigma_delta_closed(delta_bar);
        let h = t.sigma * s_bar
            + 2.0 * (delta - delta_bar) * t.sigma / s_bar
                * (2.0 * delta_bar * sf * sf + self.sigma0() * sf * self.rho);
        Ok(t.mu - delta * (self.eps_min + self.spread()) + h)
    }

    /// `d h / d delta_bar = 4 sigma (delta - delta_bar) sigma0^2 sigma_F^2 (1 - rho^2) / sigma_{delta_bar}^3`.
    pub fn family_slope(&self, delta: f64, delta_bar: f64) -> Result<f64> {
        if self.general {
            return Err(Error::NotConcave);
        }
        let s_bar = self.sigma_delta_closed(delta_bar);
        let (s0, sf) = (self.sigma0(), self.sigma_f);
        Ok(4.0 * self.spec.target.sigma * (delta - delta_bar) * s0 * s0 * sf * sf * (1.0 - self.rho * self.rho)
            / s_bar.powi(3))
    }

    /// The one law of the ball at `eps_min`: `mu + (sigma / sigma_F) (F^{-1} - mu_F)`.
    pub fn aligned_grid(&self) -> QuantileGrid {
        grid::standardize_to(&self.fgrid, self.spec.target)
            .expect("reference grid has positive spread")
    }
}

/// Solve `spec` over the moment set or the ball, depending on `radius_sq`.
pub fn solve(spec: &ProblemSpec) -> Result<Solution> {
    Solver::new(spec)?.solve()
}

pub fn solve_moment_set(spec: &ProblemSpec) -> Result<Solution> {
    Solver::new(spec)?.solve_moment_set()
}

pub fn solve_ball(spec: &ProblemSpec) -> Result<Solution> {
    Solver::new(spec)?.solve_ball()
}

pub fn epsilon_bounds(spec: &ProblemSpec) -> Result<(f64, f64)> {
    Ok(Solver::new(spec)?.epsilon_bounds())
}

pub fn f_of_delta(spec: &ProblemSpec, delta: f64) -> Result<f64> {
    Solver::new(spec)?.f_of_delta(delta)
}

pub fn delta_star(spec: &ProblemSpec, eps: f64) -> Result<f64> {
    Solver::new(spec)?.delta_star(eps)
}

pub fn epsilon_star(spec: &ProblemSpec, delta: f64) -> Result<f64> {
    Solver::new(spec)?.epsilon_star(delta)
}

pub fn objective_eval(spec: &ProblemSpec, q: &QuantileGrid) -> Result<f64> {
    Solver::new(spec)?.objective_eval(q)
}

pub fn objective_along_family(spec: &ProblemSpec, delta_bar: f64) -> Result<f64> {
    Solver::new(spec)?.objective_along_family(delta_bar)
}
