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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace augopt {

/// Ecological rate constants of the prey (u), predator (v) and reserve (w)
/// populations. Populations are measured in units of 1000 individuals.
struct ModelParams {
  double s = 0.25;       ///< prey intrinsic growth rate
  double k_u = 0.50;     ///< prey carrying capacity
  double m = 0.25;       ///< prey Allee constant, threshold at m*k_u
  double delta1 = 0.40;  ///< predation consumption rate
  double delta2 = 0.50;  ///< predator attack/conversion rate
  double gamma = 0.025;  ///< predator natural decay rate
  double q = 0.85;       ///< reserve intrinsic growth rate
  double k_w = 0.80;     ///< reserve carrying capacity
  double n = 0.25;       ///< reserve Allee constant, threshold at n*k_w

  void validate() const;
};

/// Horizon, terminal weights and translocation cost constants of the
/// objective J(h) = u_T + N*w_T - sum_t (M1*h_t^2 + M2*h_t).
struct ObjectiveParams {
  int T = 6;        ///< number of steps; trajectories hold T+1 states
  double N = 0.50;  ///< reserve terminal weight, 0 < N < 1
  double M1 = 0.40; ///< quadratic cost constant, > 0
  double M2 = 0.15; ///< linear cost constant, >= 0
  double A = 0.70;  ///< maximum translocation proportion per step

  void validate() const;
};

struct State {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

enum class ModelKind { Uncontrolled, ModelA, ModelB };

/// Translocation proportions h_0..h_{T-1}, each in [0, A].
using ControlSchedule = std::vector<double>;

/// A simulated path: T+1 states, the controls that generated it (empty for
/// the uncontrolled system), and the indices of steps that entered the
/// infeasible regime delta1 * v_t > 1 (prey update goes negative there; the
/// exact formula is still evaluated, callers decide what to do).
struct Trajectory {
  ModelKind kind = ModelKind::Uncontrolled;
  std::vector<State> states;
  ControlSchedule controls;
  std::vector<int> infeasible_steps;

  State initial() const { return states.front(); }
  State final_state() const { return states.back(); }
  int horizon() const { return static_cast<int>(states.size()) - 1; }
  bool feasible() const { return infeasible_steps.empty(); }
};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown by solvers when a trajectory enters the infeasible regime.
struct InfeasibleRegime : std::runtime_error {
  int step;
  explicit InfeasibleRegime(int step_index)
      : std::runtime_error("infeasible regime (delta1*v > 1) at step " +
                           std::to_string(step_index)),
        step(step_index) {}
};

// Growth/decay primitives. f_u and f_w are cubic strong-Allee maps with
// roots of the growth term at 0, the Allee threshold and carrying capacity.
double growth_u(double u, const ModelParams& p);
double decay_v(double v, const ModelParams& p);
double growth_w(double w, const ModelParams& p);

// One-step transition maps. Model A: growth, predation, then augmentation of
// the grown reserve. Model B: augmentation, then growth, then predation.
// h = 0 reduces both to the uncontrolled map exactly.
State step_uncontrolled(const State& x, const ModelParams& p);
State step_model_a(const State& x, double h, const ModelParams& p);
State step_model_b(const State& x, double h, const ModelParams& p);

/// True when the prey update at this state would go negative (delta1*v > 1).
bool infeasible_regime(const State& x, const ModelParams& p);

/// Iterates the step map matching `kind` for `steps` steps. `controls` must
/// have exactly `steps` entries for Models A/B and may be empty for the
/// uncontrolled system. Throws LengthMismatch otherwise. Infeasible steps
/// are recorded in the result, not thrown.
Trajectory simulate(ModelKind kind, const State& x0,
                    const ControlSchedule& controls, const ModelParams& p,
                    int steps);

/// J(h) = u_T + N*w_T - sum_t (M1*h_t^2 + M2*h_t). The trajectory's own
/// controls supply the cost terms; an uncontrolled trajectory has zero cost.
double objective(const Trajectory& traj, const ObjectiveParams& obj);

}  // namespace augopt
