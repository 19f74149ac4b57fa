//! C ABI for `distortion-risk`.
//!
//! Every function returns a [`DrStatus`]; on failure the message is kept per
//! thread and read back with [`dr_last_error_message`]. Solvers are opaque
//! handles created by `dr_solver_new*` and released with [`dr_solver_free`].
//! Optional numbers (absent thresholds, moment-only radius) are NaN.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use distortion_risk::cli::{exit_code, parse_reference};
use distortion_risk::oracle::{self, OracleConfig};
use distortion_risk::solver::SolverOptions;
use distortion_risk::{
    DistortionSpec, Error, MomentTarget, ProblemSpec, ReferenceDistribution, Regime, Solution, Solver,
};

/// Status codes. Values 1 to 5 match the `drisk` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrStatus {
    Ok = 0,
    Failure = 1,
    Infeasible = 2,
    InvalidInput = 3,
    AssumptionViolated = 4,
    VerificationFailed = 5,
    NullPointer = 6,
    BufferSize = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrRegime {
    Infeasible = 0,
    Degenerate = 1,
    Interior = 2,
    Boundary = 3,
    Unconstrained = 4,
    MomentOnly = 5,
}

/// Accept VaR distortions.
pub const DR_FLAG_ALLOW_VAR: u32 = 1;
/// Use the isotonic path even for concave distortions.
pub const DR_FLAG_FORCE_GENERAL: u32 = 2;

/// Opaque solver handle.
pub struct DrSolver {
    inner: Solver,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DrResult {
    pub regime: DrRegime,
    pub value: f64,
    pub risk_part: f64,
    pub achieved_distance_sq: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub rho: f64,
    pub sigma0: f64,
    pub delta_star: f64,
    pub eps_star: f64,
    pub used_isotonic: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DrOracleConfig {
    pub samples: usize,
    pub ascent_iters: usize,
    pub ascent_runs: usize,
    pub step: f64,
    pub gap_tolerance: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DrOracleReport {
    pub passed: bool,
    pub violations: usize,
    pub best_value: f64,
    pub closed_form_value: f64,
    pub gap: f64,
    pub max_excess: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DrStatus {
    match exit_code(err) {
        2 => DrStatus::Infeasible,
        3 => DrStatus::InvalidInput,
        4 => DrStatus::AssumptionViolated,
        5 => DrStatus::VerificationFailed,
        _ => DrStatus::Failure,
    }
}

/// Run `f`, turning errors and panics into a status plus the last-error message.
fn guard(f: impl FnOnce() -> Result<(), (DrStatus, String)>) -> DrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DrStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DrStatus::Panic
        }
    }
}

fn lib(err: Error) -> (DrStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (DrStatus, String) {
    (DrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DrStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DrStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn solver_ref<'a>(s: *const DrSolver) -> Result<&'a Solver, (DrStatus, String)> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("solver"))
}

fn radius(eps: f64) -> Option<f64> {
    if eps.is_nan() {
        None
    } else {
        Some(eps)
    }
}

#[allow(clippy::too_many_arguments)]
fn build(
    reference: ReferenceDistribution,
    distortion: &str,
    mu: f64,
    sigma: f64,
    delta: f64,
    eps: f64,
    n: usize,
    flags: u32,
    out: *mut *mut DrSolver,
) -> Result<(), (DrStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let g = DistortionSpec::from_str(distortion).map_err(lib)?;
    let target = MomentTarget::new(mu, sigma).map_err(lib)?;
    let spec = ProblemSpec::new(reference, g, target, delta, radius(eps), n)
        .map_err(lib)?
        .with_options(SolverOptions {
            allow_var: flags & DR_FLAG_ALLOW_VAR != 0,
            force_general: flags & DR_FLAG_FORCE_GENERAL != 0,
        });
    let solver = Solver::new(&spec).map_err(lib)?;
    unsafe { *out = Box::into_raw(Box::new(DrSolver { inner: solver })) };
    Ok(())
}

/// Create a solver. `reference` is `normal:mu,sigma`, `uniform:lo,hi` or
/// `empirical:path`; `distortion` uses the CLI grammar (`cvar:0.7`, ...).
/// Pass `eps = NaN` for the moment set without a ball.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_solver_new(
    reference: *const c_char,
    distortion: *const c_char,
    mu: f64,
    sigma: f64,
    delta: f64,
    eps: f64,
    n: usize,
    flags: u32,
    out: *mut *mut DrSolver,
) -> DrStatus {
    guard(|| {
        let r = parse_reference(str_arg(reference, "reference")?).map_err(lib)?;
        build(r, str_arg(distortion, "distortion")?, mu, sigma, delta, eps, n, flags, out)
    })
}

/// Create a solver whose reference is the empirical law of `samples[0..len]`.
///
/// # Safety
/// `samples` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn dr_solver_new_empirical(
    samples: *const f64,
    len: usize,
    distortion: *const c_char,
    mu: f64,
    sigma: f64,
    delta: f64,
    eps: f64,
    n: usize,
    flags: u32,
    out: *mut *mut DrSolver,
) -> DrStatus {
    guard(|| {
        if samples.is_null() {
            return Err(null("samples"));
        }
        let data = std::slice::from_raw_parts(samples, len).to_vec();
        let r = ReferenceDistribution::empirical(data).map_err(lib)?;
        build(r, str_arg(distortion, "distortion")?, mu, sigma, delta, eps, n, flags, out)
    })
}

/// Release a solver. Null is ignored.
///
/// # Safety
/// `solver` must come from `dr_solver_new*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_solver_free(solver: *mut DrSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

/// Number of grid cells.
///
/// # Safety
/// `solver` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn dr_solver_grid_size(solver: *const DrSolver) -> usize {
    solver.as_ref().map_or(0, |s| s.inner.spec().n)
}

fn to_result(sol: &Solution) -> DrResult {
    let d = &sol.diagnostics;
    DrResult {
        regime: regime(sol.regime),
        value: sol.value,
        risk_part: sol.risk_part,
        achieved_distance_sq: sol.achieved_distance_sq,
        eps_min: d.eps_min,
        eps_max: d.eps_max,
        rho: d.rho,
        sigma0: d.sigma0,
        delta_star: d.delta_star.unwrap_or(f64::NAN),
        eps_star: d.eps_star.unwrap_or(f64::NAN),
        used_isotonic: d.used_isotonic,
    }
}

fn regime(r: Regime) -> DrRegime {
    match r {
        Regime::Infeasible => DrRegime::Infeasible,
        Regime::Degenerate => DrRegime::Degenerate,
        Regime::Interior => DrRegime::Interior,
        Regime::Boundary => DrRegime::Boundary,
        Regime::Unconstrained => DrRegime::Unconstrained,
        Regime::MomentOnly => DrRegime::MomentOnly,
    }
}

/// Solve at penalty `delta` and radius `eps` (NaN for no ball). When
/// `quantile` is non-null it receives the optimal grid and `len` must equal
/// the grid size. An infeasible radius returns `Infeasible` and sets
/// `out->regime` accordingly.
///
/// # Safety
/// `out` must be writable; `quantile` must hold `len` doubles if non-null.
#[no_mangle]
pub unsafe extern "C" fn dr_solve_at(
    solver: *const DrSolver,
    delta: f64,
    eps: f64,
    out: *mut DrResult,
    quantile: *mut f64,
    len: usize,
) -> DrStatus {
    guard(|| {
        let s = solver_ref(solver)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if !quantile.is_null() && len != s.spec().n {
            return Err((DrStatus::BufferSize, format!("buffer holds {len}, grid has {}", s.spec().n)));
        }
        match s.solve_at(delta, radius(eps)) {
            Ok(sol) => {
                *out = to_result(&sol);
                if !quantile.is_null() {
                    ptr::copy_nonoverlapping(sol.optimal_quantile.values().as_ptr(), quantile, len);
                }
                Ok(())
            }
            Err(e) => {
                if let Error::InfeasibleRadius { eps_min, .. } = e {
                    let (_, eps_max) = s.epsilon_bounds();
                    *out = DrResult {
                        regime: DrRegime::Infeasible,
                        value: f64::NAN,
                        risk_part: f64::NAN,
                        achieved_distance_sq: f64::NAN,
                        eps_min,
                        eps_max,
                        rho: s.rho_effective(),
                        sigma0: s.sigma0(),
                        delta_star: f64::NAN,
                        eps_star: f64::NAN,
                        used_isotonic: false,
                    };
                }
                Err(lib(e))
            }
        }
    })
}

/// Solve the problem the solver was created with.
///
/// # Safety
/// As for [`dr_solve_at`].
#[no_mangle]
pub unsafe extern "C" fn dr_solve(solver: *const DrSolver, out: *mut DrResult, quantile: *mut f64, len: usize) -> DrStatus {
    match solver.as_ref() {
        None => guard(|| Err(null("solver"))),
        Some(s) => {
            let spec = s.inner.spec();
            dr_solve_at(solver, spec.penalty.delta, spec.radius_sq.unwrap_or(f64::NAN), out, quantile, len)
        }
    }
}

/// `eps_min` and `eps_max`.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_epsilon_bounds(solver: *const DrSolver, eps_min: *mut f64, eps_max: *mut f64) -> DrStatus {
    guard(|| {
        let s = solver_ref(solver)?;
        if eps_min.is_null() || eps_max.is_null() {
            return Err(null("output"));
        }
        let (lo, hi) = s.epsilon_bounds();
        *eps_min = lo;
        *eps_max = hi;
        Ok(())
    })
}

/// Penalty at which the moment-set optimum sits at squared distance `eps`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_delta_star(solver: *const DrSolver, eps: f64, out: *mut f64) -> DrStatus {
    guard(|| {
        let s = solver_ref(solver)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.delta_star(eps).map_err(lib)?;
        Ok(())
    })
}

/// Squared distance of the moment-set optimum at penalty `delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_epsilon_star(solver: *const DrSolver, delta: f64, out: *mut f64) -> DrStatus {
    guard(|| {
        let s = solver_ref(solver)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.epsilon_star(delta).map_err(lib)?;
        Ok(())
    })
}

/// Defaults used by the `drisk verify` command.
#[no_mangle]
pub extern "C" fn dr_oracle_config_default() -> DrOracleConfig {
    let d = OracleConfig::default();
    DrOracleConfig {
        samples: d.samples,
        ascent_iters: d.ascent_iters,
        ascent_runs: d.ascent_runs,
        step: d.step,
        gap_tolerance: d.gap_tolerance,
        seed: d.seed,
    }
}

/// Check the solver's own problem against random sampling and ascent.
/// Returns `VerificationFailed` (with `out` filled) when the check fails.
///
/// # Safety
/// `config` may be null (defaults); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_verify(solver: *const DrSolver, config: *const DrOracleConfig, out: *mut DrOracleReport) -> DrStatus {
    guard(|| {
        let s = solver_ref(solver)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = config.as_ref().copied().unwrap_or_else(|| dr_oracle_config_default());
        let cfg = OracleConfig {
            samples: c.samples,
            ascent_iters: c.ascent_iters,
            ascent_runs: c.ascent_runs,
            step: c.step,
            gap_tolerance: c.gap_tolerance,
            seed: c.seed,
            corrupt_offset: 0.0,
        };
        let report = oracle::run(s, &cfg).map_err(lib)?;
        *out = DrOracleReport {
            passed: report.passed,
            violations: report.violations,
            best_value: report.best_value,
            closed_form_value: report.closed_form_value,
            gap: report.gap,
            max_excess: report.max_excess,
        };
        if report.passed {
            Ok(())
        } else {
            Err(lib(Error::VerificationFailed {
                report: Box::new(report),
            }))
        }
    })
}

/// Message for the last failing call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn dr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn dr_status_name(status: DrStatus) -> *const c_char {
    let s: &'static CStr = match status {
        DrStatus::Ok => c"ok",
        DrStatus::Failure => c"failure",
        DrStatus::Infeasible => c"infeasible",
        DrStatus::InvalidInput => c"invalid input",
        DrStatus::AssumptionViolated => c"assumption violated",
        DrStatus::VerificationFailed => c"verification failed",
        DrStatus::NullPointer => c"null pointer",
        DrStatus::BufferSize => c"buffer size mismatch",
        DrStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Library version, NUL-terminated.
#[no_mangle]
pub extern "C" fn dr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
