use super::{
    assumption, check_delta, Regime, Score, Solution, Solver, SolverDiagnostics, EPS_MIN_TOL,
    RHO_DEGENERATE_TOL,
};
use crate::dist_core::grid::{self, QuantileGrid};
use crate::error::{Error, Result};

/// Closed-form and grid-evaluated values must agree this closely.
const VALUE_CHECK_TOL: f64 = 1e-8;

impl Solver {
    pub fn solve(&self) -> Result<Solution> {
        self.solve_at(self.delta(), self.spec.radius_sq)
    }

    pub fn solve_moment_set(&self) -> Result<Solution> {
        self.moment_set_solution(self.delta(), Regime::MomentOnly)
    }

    pub fn solve_ball(&self) -> Result<Solution> {
        let eps = self.spec.radius_sq.ok_or_else(|| {
            Error::InvalidProblem("ball problem needs a radius".into())
        })?;
        self.solve_ball_at(self.delta(), eps)
    }

    /// Solve at an arbitrary penalty and radius, reusing the discretization.
    pub fn solve_at(&self, delta: f64, radius_sq: Option<f64>) -> Result<Solution> {
        match radius_sq {
            None => self.moment_set_solution(delta, Regime::MomentOnly),
            Some(eps) => self.solve_ball_at(delta, eps),
        }
    }

    pub fn solve_ball_at(&self, delta: f64, eps: f64) -> Result<Solution> {
        check_delta(delta)?;
        if eps.is_nan() {
            return Err(Error::InvalidProblem("radius is NaN".into()));
        }
        let (eps_min, eps_max) = self.epsilon_bounds();
        let tol = EPS_MIN_TOL * eps_min.max(1.0);
        if eps < eps_min - tol {
            return Err(Error::InfeasibleRadius { eps, eps_min });
        }
        if (eps - eps_min).abs() <= tol {
            return self.degenerate_solution(delta, None);
        }
        if self.rho_eff >= 1.0 - RHO_DEGENERATE_TOL {
            let warning = format!(
                "correlation with the reference is {} (>= 1 - {RHO_DEGENERATE_TOL:e}); \
                 the ball problem is trivial and the aligned law is returned",
                self.rho_eff
            );
            return self.degenerate_solution(delta, Some(warning));
        }
        if eps >= eps_max {
            return self.moment_set_solution(delta, Regime::Unconstrained);
        }
        if self.general {
            let report = self
                .a4
                .get_or_init(|| assumption::check_solver_a4(self, &super::default_a4_grid()));
            if let Some(v) = report.first_violation {
                return Err(Error::AssumptionA4Violated {
                    delta_lo: v.delta_lo,
                    corr_lo: v.value_lo,
                    delta_hi: v.delta_hi,
                    corr_hi: v.value_hi,
                });
            }
        }
        let d_star = self.delta_star(eps)?;
        let mut sol = if delta >= d_star {
            self.moment_set_solution(delta, Regime::Interior)?
        } else {
            self.boundary_solution(delta, d_star)?
        };
        sol.diagnostics.delta_star = Some(d_star);
        Ok(sol)
    }

    /// The penalized moment-set optimum `G_delta` (or its projected version).
    pub fn interior_solution(&self, delta: f64) -> Result<Solution> {
        self.moment_set_solution(delta, Regime::Interior)
    }

    fn moment_set_solution(&self, delta: f64, regime: Regime) -> Result<Solution> {
        check_delta(delta)?;
        let score = self.score(delta);
        let (mu_s, sigma_s) = (grid::mean(&score.values), grid::std(&score.values));
        if !(sigma_s > 0.0) {
            return Err(Error::DegenerateProjection);
        }
        let q = self.quantile_from_score(&score)?;
        let t = self.spec.target;
        let value = t.mu - delta * (self.eps_min + self.spread()) + t.sigma * sigma_s;
        let mut sol = self.finish(regime, q, value, delta, &score)?;
        sol.diagnostics.mu_delta = mu_s;
        sol.diagnostics.sigma_delta = sigma_s;
        sol.diagnostics.eps_star = Some(sol.achieved_distance_sq);
        Ok(sol)
    }

    /// The optimum on the surface of the ball: the family member at `d_star`
    /// evaluated under the penalty `delta`.
    pub fn boundary_solution(&self, delta: f64, d_star: f64) -> Result<Solution> {
        check_delta(delta)?;
        check_delta(d_star)?;
        let at_star = self.score(d_star);
        let sigma_star = grid::std(&at_star.values);
        if !(sigma_star > 0.0) {
            return Err(Error::DegenerateProjection);
        }
        let q = self.quantile_from_score(&at_star)?;
        let t = self.spec.target;
        let base = t.mu - delta * (self.eps_min + self.spread());

        let at_delta = self.score(delta);
        let raw: Vec<f64> = self
            .gamma
            .weights()
            .iter()
            .zip(self.fgrid.values())
            .map(|(g, f)| g + 2.0 * delta * f)
            .collect();
        let sigma_delta = grid::std(&raw);

        // sigma * sigma_delta * corr(gamma + 2 delta F^{-1}, G_{delta*}).
        let cov_term = if self.general {
            grid::cov(&raw, &at_star.values) / sigma_star
        } else {
            let (s0, sf, rho) = (self.sigma0(), self.sigma_f, self.rho);
            (s0 * s0 + 2.0 * (delta + d_star) * s0 * sf * rho + 4.0 * delta * d_star * sf * sf)
                / self.sigma_delta_closed(d_star)
        };
        let value = base + t.sigma * cov_term;

        let mut sol = self.finish(Regime::Boundary, q, value, delta, &at_star)?;
        sol.diagnostics.mu_delta = grid::mean(&at_delta.values);
        sol.diagnostics.sigma_delta = if at_delta.used_isotonic {
            grid::std(&at_delta.values)
        } else {
            sigma_delta
        };
        sol.diagnostics.delta_star = Some(d_star);
        sol.diagnostics.eps_star = Some(self.epsilon_star(delta)?);
        Ok(sol)
    }

    fn degenerate_solution(&self, delta: f64, warning: Option<String>) -> Result<Solution> {
        let q = self.aligned_grid();
        let t = self.spec.target;
        let value = t.mu + t.sigma * self.sigma0() * self.rho - delta * self.eps_min;
        let score = Score {
            values: Vec::new(),
            used_isotonic: false,
        };
        let mut sol = self.finish(Regime::Degenerate, q, value, delta, &score)?;
        sol.diagnostics.eps_star = Some(self.eps_min);
        sol.warnings.extend(warning);
        Ok(sol)
    }

    fn quantile_from_score(&self, score: &Score) -> Result<QuantileGrid> {
        let values = grid::standardize_slice(&score.values, self.spec.target)
            .map_err(|_| Error::DegenerateProjection)?;
        QuantileGrid::new(values)
    }

    /// Fill in the grid-evaluated parts and cross-check the closed-form value.
    fn finish(
        &self,
        regime: Regime,
        q: QuantileGrid,
        value: f64,
        delta: f64,
        score: &Score,
    ) -> Result<Solution> {
        let risk_part = grid::inner(self.gamma.weights(), q.values());
        let achieved = grid::sq_dist(self.fgrid.values(), q.values());
        let direct = risk_part - delta * achieved;
        let scale = value.abs().max(1.0) + delta * achieved;
        if (direct - value).abs() > VALUE_CHECK_TOL * scale {
            return Err(Error::Internal(format!(
                "{regime} value {value} disagrees with grid evaluation {direct}"
            )));
        }
        let (eps_min, eps_max) = self.epsilon_bounds();
        let mut warnings = Vec::new();
        if self.spec.distortion.is_var() {
            warnings.push(
                "VaR weights are a single grid cell; results depend on the discretization".to_string(),
            );
        }
        Ok(Solution {
            regime,
            optimal_quantile: q,
            value,
            risk_part,
            achieved_distance_sq: achieved,
            diagnostics: SolverDiagnostics {
                eps_min,
                eps_max,
                rho: self.rho_eff,
                sigma0: self.sigma0(),
                sigma_delta: 0.0,
                mu_delta: 0.0,
                delta_star: None,
                eps_star: None,
                used_isotonic: score.used_isotonic || self.general,
                concave: !self.general,
            },
            warnings,
        })
    }
}
