/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef DISTORTION_RISK_H
#define DISTORTION_RISK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Accept VaR distortions.
 */
#define DR_FLAG_ALLOW_VAR 1

/**
 * Use the isotonic path even for concave distortions.
 */
#define DR_FLAG_FORCE_GENERAL 2

typedef enum DrRegime {
  DR_REGIME_INFEASIBLE = 0,
  DR_REGIME_DEGENERATE = 1,
  DR_REGIME_INTERIOR = 2,
  DR_REGIME_BOUNDARY = 3,
  DR_REGIME_UNCONSTRAINED = 4,
  DR_REGIME_MOMENT_ONLY = 5,
} DrRegime;

/**
 * Status codes. Values 1 to 5 match the `drisk` exit codes.
 */
typedef enum DrStatus {
  DR_STATUS_OK = 0,
  DR_STATUS_FAILURE = 1,
  DR_STATUS_INFEASIBLE = 2,
  DR_STATUS_INVALID_INPUT = 3,
  DR_STATUS_ASSUMPTION_VIOLATED = 4,
  DR_STATUS_VERIFICATION_FAILED = 5,
  DR_STATUS_NULL_POINTER = 6,
  DR_STATUS_BUFFER_SIZE = 7,
  DR_STATUS_PANIC = 8,
} DrStatus;

/**
 * Opaque solver handle.
 */
typedef struct DrSolver DrSolver;

typedef struct DrResult {
  enum DrRegime regime;
  double value;
  double risk_part;
  double achieved_distance_sq;
  double eps_min;
  double eps_max;
  double rho;
  double sigma0;
  double delta_star;
  double eps_star;
  bool used_isotonic;
} DrResult;

typedef struct DrOracleConfig {
  size_t samples;
  size_t ascent_iters;
  size_t ascent_runs;
  double step;
  double gap_tolerance;
  uint64_t seed;
} DrOracleConfig;

typedef struct DrOracleReport {
  bool passed;
  size_t violations;
  double best_value;
  double closed_form_value;
  double gap;
  double max_excess;
} DrOracleReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a solver. `reference` is `normal:mu,sigma`, `uniform:lo,hi` or
 * `empirical:path`; `distortion` uses the CLI grammar (`cvar:0.7`, ...).
 * Pass `eps = NaN` for the moment set without a ball.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum DrStatus dr_solver_new(const char *reference,
                            const char *distortion,
                            double mu,
                            double sigma,
                            double delta,
                            double eps,
                            size_t n,
                            uint32_t flags,
                            struct DrSolver **out);

/**
 * Create a solver whose reference is the empirical law of `samples[0..len]`.
 *
 * # Safety
 * `samples` must point to `len` readable doubles.
 */
enum DrStatus dr_solver_new_empirical(const double *samples,
                                      size_t len,
                                      const char *distortion,
                                      double mu,
                                      double sigma,
                                      double delta,
                                      double eps,
                                      size_t n,
                                      uint32_t flags,
                                      struct DrSolver **out);

/**
 * Release a solver. Null is ignored.
 *
 * # Safety
 * `solver` must come from `dr_solver_new*` and not be used afterwards.
 */
void dr_solver_free(struct DrSolver *solver);

/**
 * Number of grid cells.
 *
 * # Safety
 * `solver` must be a live handle or null (returns 0).
 */
size_t dr_solver_grid_size(const struct DrSolver *solver);

/**
 * Solve at penalty `delta` and radius `eps` (NaN for no ball). When
 * `quantile` is non-null it receives the optimal grid and `len` must equal
 * the grid size. An infeasible radius returns `Infeasible` and sets
 * `out->regime` accordingly.
 *
 * # Safety
 * `out` must be writable; `quantile` must hold `len` doubles if non-null.
 */
enum DrStatus dr_solve_at(const struct DrSolver *solver,
                          double delta,
                          double eps,
                          struct DrResult *out,
                          double *quantile,
                          size_t len);

/**
 * Solve the problem the solver was created with.
 *
 * # Safety
 * As for [`dr_solve_at`].
 */
enum DrStatus dr_solve(const struct DrSolver *solver,
                       struct DrResult *out,
                       double *quantile,
                       size_t len);

/**
 * `eps_min` and `eps_max`.
 *
 * # Safety
 * Output pointers must be writable.
 */
enum DrStatus dr_epsilon_bounds(const struct DrSolver *solver, double *eps_min, double *eps_max);

/**
 * Penalty at which the moment-set optimum sits at squared distance `eps`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DrStatus dr_delta_star(const struct DrSolver *solver, double eps, double *out);

/**
 * Squared distance of the moment-set optimum at penalty `delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DrStatus dr_epsilon_star(const struct DrSolver *solver, double delta, double *out);

/**
 * Defaults used by the `drisk verify` command.
 */
struct DrOracleConfig dr_oracle_config_default(void);

/**
 * Check the solver's own problem against random sampling and ascent.
 * Returns `VerificationFailed` (with `out` filled) when the check fails.
 *
 * # Safety
 * `config` may be null (defaults); `out` must be writable.
 */
enum DrStatus dr_verify(const struct DrSolver *solver,
                        const struct DrOracleConfig *config,
                        struct DrOracleReport *out);

/**
 * Message for the last failing call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *dr_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *dr_status_name(enum DrStatus status);

/**
 * Library version, NUL-terminated.
 */
const char *dr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTORTION_RISK_H */
