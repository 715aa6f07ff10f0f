/*
 Copyright 2026 the augopt authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

/* C interface to the augmentation-planning solvers. All functions return an
 * augopt_status; on failure augopt_last_error() describes the problem for
 * the calling thread. Handles are created by the library and released with
 * the matching _free function. */

#ifndef AUGOPT_H
#define AUGOPT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum augopt_status {
  AUGOPT_OK = 0,
  AUGOPT_ERR_INVALID_ARGUMENT = 1,
  AUGOPT_ERR_PARSE = 2,
  AUGOPT_ERR_VALIDATION = 3,
  AUGOPT_ERR_LENGTH_MISMATCH = 4,
  AUGOPT_ERR_INFEASIBLE_REGIME = 5,
  AUGOPT_ERR_NOT_CONVERGED = 6,
  AUGOPT_ERR_IO = 7
} augopt_status;

typedef enum augopt_model {
  AUGOPT_MODEL_UNCONTROLLED = 0,
  AUGOPT_MODEL_A = 1,
  AUGOPT_MODEL_B = 2
} augopt_model;

typedef struct augopt_scenario augopt_scenario;
typedef struct augopt_result augopt_result;

/* Solver options; zero-initialize and set only the fields to override.
 * Zero/NULL fields keep the library defaults. */
typedef struct augopt_solver_options {
  /* Model A forward-backward sweep. */
  double sweep_relaxation; /* default 0.1 */
  double sweep_tol;        /* default 1e-3 */
  int sweep_max_iter;      /* default 1000 */
  /* Model B direct optimizer. */
  const double* starts; /* constant-schedule starts; default 5-point grid */
  size_t n_starts;
  double kkt_tol;   /* default 1e-6 */
  double grad_step; /* relative finite-difference step, default 1e-7 */
  int opt_max_iter; /* default 500 */
} augopt_solver_options;

/* Description of the most recent failure on the calling thread. The pointer
 * stays valid until the next failing augopt_* call on the same thread. */
const char* augopt_last_error(void);

/* --- scenarios ----------------------------------------------------------- */

/* Name of the idx-th built-in scenario, or NULL past the end. */
const char* augopt_builtin_name(size_t idx);

augopt_status augopt_scenario_builtin(const char* name,
                                      augopt_scenario** out);
augopt_status augopt_scenario_from_text(const char* text,
                                        augopt_scenario** out);
augopt_status augopt_scenario_from_file(const char* path,
                                        augopt_scenario** out);
/* Serializes to the key=value config format; free with augopt_string_free. */
augopt_status augopt_scenario_to_text(const augopt_scenario* scenario,
                                      char** out_text);
const char* augopt_scenario_name(const augopt_scenario* scenario);
int augopt_scenario_horizon(const augopt_scenario* scenario);
/* Objective of the uncontrolled trajectory (the no-control baseline J(0)). */
augopt_status augopt_scenario_no_control_objective(
    const augopt_scenario* scenario, double* out_j0);
void augopt_scenario_free(augopt_scenario* scenario);

/* --- simulation and solving --------------------------------------------- */

/* Simulates `model` under the given controls (n_controls must equal the
 * scenario horizon; pass NULL/0 for the uncontrolled system). Infeasible
 * steps are reported as AUGOPT_ERR_INFEASIBLE_REGIME but *out is still
 * produced so the offending trajectory can be inspected. */
augopt_status augopt_simulate(const augopt_scenario* scenario,
                              augopt_model model, const double* controls,
                              size_t n_controls, augopt_result** out);

/* Solves for the optimal schedule: Model A by the forward-backward sweep,
 * Model B by direct box-constrained maximization. On
 * AUGOPT_ERR_NOT_CONVERGED the last iterate is still returned in *out. */
augopt_status augopt_solve(const augopt_scenario* scenario,
                           augopt_model model,
                           const augopt_solver_options* options,
                           augopt_result** out);

/* --- results ------------------------------------------------------------- */

double augopt_result_objective(const augopt_result* result);
int augopt_result_iterations(const augopt_result* result);
int augopt_result_converged(const augopt_result* result);
int augopt_result_horizon(const augopt_result* result);
size_t augopt_result_num_controls(const augopt_result* result);
/* Copies the schedule into `buf` (capacity augopt_result_num_controls). */
augopt_status augopt_result_controls(const augopt_result* result,
                                     double* buf);
/* State at step t as {u, v, w}; t in [0, horizon]. */
augopt_status augopt_result_state(const augopt_result* result, int t,
                                  double out_uvw[3]);
int augopt_result_has_adjoints(const augopt_result* result);
/* Adjoint triple {lambda_u, lambda_v, lambda_w} at step t (Model A only). */
augopt_status augopt_result_adjoint(const augopt_result* result, int t,
                                    double out_lambda[3]);
/* Writes the trajectory CSV (t,u,v,w,h,lambda_u,lambda_v,lambda_w). */
augopt_status augopt_result_write_csv(const augopt_result* result,
                                      const char* path);
void augopt_result_free(augopt_result* result);

/* --- reporting ----------------------------------------------------------- */

/* Runs the full built-in scenario grid with both models and produces the
 * summary table (plain text) and the machine-readable report CSV. Either
 * output pointer may be NULL. Returns AUGOPT_ERR_NOT_CONVERGED if any cell
 * failed to converge (outputs are still produced). */
augopt_status augopt_run_table(const augopt_solver_options* options,
                               char** out_table_text, char** out_report_csv);

void augopt_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AUGOPT_H */
