//! Robust distortion risk measures with a linear Wasserstein penalty.
//!
//! Evaluates `sup_G H_g(G) - delta * d_W^2(F, G)` over all laws with a given
//! mean and standard deviation, optionally intersected with a Wasserstein ball
//! around a reference `F`, and returns the optimal quantile function, the
//! optimal value and the regime the optimum falls in.
//!
//! ```
//! use distortion_risk::{solve, DistortionSpec, MomentTarget, ProblemSpec, ReferenceDistribution};
//!
//! let spec = ProblemSpec::new(
//!     ReferenceDistribution::normal(0.0, 1.0).unwrap(),
//!     DistortionSpec::DualPower { beta: 5.0 },
//!     MomentTarget::new(0.0, 1.0).unwrap(),
//!     0.0,
//!     None,
//!     10_000,
//! )
//! .unwrap();
//! let sol = solve(&spec).unwrap();
//! assert!((sol.value - 4.0 / 3.0).abs() < 1e-3);
//! ```

// NaN-rejecting checks are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dist_core;
pub mod distortion;
pub mod error;
pub mod isotonic;
pub mod oracle;
pub mod solver;

pub use dist_core::{
    inverse_normal_cdf, wasserstein2_sq, MomentTarget, QuantileGrid, ReferenceDistribution,
};
pub use distortion::{gamma_grid, DistortionSpec, GammaGrid};
pub use error::{Error, Result};
pub use isotonic::{isotonic_project, IsotonicResult};
pub use oracle::{OracleConfig, OracleReport};
pub use solver::{
    solve, PenaltySpec, ProblemSpec, Regime, Solution, Solver, SolverDiagnostics, SolverOptions,
};
