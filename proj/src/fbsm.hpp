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

#include <array>
#include <optional>

#include "model.hpp"

namespace augopt {

/// Costate sequences lambda_u, lambda_v, lambda_w of length T+1. Terminal
/// values carry the transversality condition (1, 0, N).
struct AdjointTrajectory {
  std::vector<double> lambda_u;
  std::vector<double> lambda_v;
  std::vector<double> lambda_w;

  std::array<double, 3> at(int t) const {
    return {lambda_u[static_cast<std::size_t>(t)],
            lambda_v[static_cast<std::size_t>(t)],
            lambda_w[static_cast<std::size_t>(t)]};
  }
};

struct SweepConfig {
  /// Weight on the characterization in the convex-combination update,
  /// h_new = relaxation*h_char + (1-relaxation)*h_old.
  double relaxation = 0.1;
  /// Relative convergence tolerance of the criterion
  /// tol*sum|x_new| - sum|x_new - x_old| >= 0, checked jointly on controls,
  /// states and adjoints.
  double tol = 1e-3;
  int max_iter = 1000;

  void validate() const;
};

struct SolveResult {
  ControlSchedule controls;
  Trajectory trajectory;
  std::optional<AdjointTrajectory> adjoints;  ///< Model A only
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// One backward step of the costate recursion for Model A. `lam_next` is the
/// adjoint triple (lambda_u, lambda_v, lambda_w) at t+1, `x` and `h` the
/// forward state and control at t. Linear in lam_next.
std::array<double, 3> adjoint_step(const State& x, double h,
                                   const std::array<double, 3>& lam_next,
                                   const ModelParams& p);

/// Closed-form control characterization clamped to [0, A]:
/// min{A, max{0, ((lam_u - lam_w)*f_w'(bracket)*w - M2) / (2*M1)}} where the
/// bracket is q(1-w/k_w)(w/k_w-n)+1. Boundary equality returns the bound.
double characterize_control(double w, double lam_u_next, double lam_w_next,
                            const ModelParams& p, const ObjectiveParams& obj);

/// Model A Hamiltonian at one step, for diagnostics: running cost plus the
/// adjoint-weighted one-step updates. Concave in h with d2H/dh2 = -2*M1.
double hamiltonian_a(const State& x, double h,
                     const std::array<double, 3>& lam_next,
                     const ModelParams& p, const ObjectiveParams& obj);

/// Forward-backward sweep for Model A: forward state pass, backward adjoint
/// pass from transversality, characterization, relaxed control update,
/// repeated until successive controls, states and adjoints are all within
/// the relative tolerance. Starts from the all-zero schedule. Returns the
/// last iterate with converged=false when max_iter is exhausted. Throws
/// InfeasibleRegime if a forward pass leaves the feasible regime.
SolveResult solve_fbsm(const State& x0, const ModelParams& p,
                       const ObjectiveParams& obj, const SweepConfig& cfg);

}  // namespace augopt
