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

#pragma once

#include "fbsm.hpp"
#include "model.hpp"

namespace augopt {

struct OptimizerConfig {
  /// Constant-schedule starting values, each in [0, A]. Empty selects the
  /// default grid {0, A/4, A/2, 3A/4, A}.
  std::vector<double> starts;
  /// Relative finite-difference step for the objective gradient.
  double grad_step = 1e-7;
  /// Absolute floor on the finite-difference step.
  double grad_step_floor = 1e-8;
  /// Projected-gradient stationarity tolerance.
  double kkt_tol = 1e-6;
  /// Iteration cap per start.
  int max_iter = 500;

  void validate(double control_bound) const;
};

/// Simulates Model B under `h` and evaluates the objective. Throws
/// InfeasibleRegime if the trajectory leaves the feasible regime.
double objective_of_controls(const ControlSchedule& h, const State& x0,
                             const ModelParams& p, const ObjectiveParams& obj);

/// Component-wise finite-difference gradient of objective_of_controls.
/// Central differences in the interior, one-sided at the box boundary.
std::vector<double> gradient(const ControlSchedule& h, const State& x0,
                             const ModelParams& p, const ObjectiveParams& obj,
                             const OptimizerConfig& cfg = {});

/// Maximizes J over the box [0, A]^T by a projected quasi-Newton (BFGS)
/// ascent with backtracking line search, run from every start in the config;
/// returns the best converged result (max J, ties broken by lexicographically
/// smaller schedule). converged reflects the projected-gradient KKT check at
/// the winner. Deterministic.
SolveResult solve_direct(const State& x0, const ModelParams& p,
                         const ObjectiveParams& obj,
                         const OptimizerConfig& cfg = {});

}  // namespace augopt
