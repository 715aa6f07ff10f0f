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

#include "model.hpp"

namespace augopt {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(std::string(field) + ": " + what);
}

}  // namespace

void ModelParams::validate() const {
  require(s > 0.0, "s", "must be strictly positive");
  require(k_u > 0.0, "k_u", "must be strictly positive");
  require(m > 0.0 && m < 1.0, "m", "must satisfy 0 < m < 1");
  require(delta1 > 0.0, "delta1", "must be strictly positive");
  require(delta2 > 0.0, "delta2", "must be strictly positive");
  require(gamma > 0.0 && gamma < 1.0, "gamma", "must satisfy 0 < gamma < 1");
  require(q > 0.0, "q", "must be strictly positive");
  require(k_w > 0.0, "k_w", "must be strictly positive");
  require(n > 0.0 && n < 1.0, "n", "must satisfy 0 < n < 1");
}

void ObjectiveParams::validate() const {
  require(T >= 1, "T", "must be at least 1");
  require(N > 0.0 && N < 1.0, "N", "must satisfy 0 < N < 1");
  require(M1 > 0.0, "M1", "must be strictly positive");
  require(M2 >= 0.0, "M2", "must be nonnegative");
  // A = 0 is permitted: the control set degenerates to the single all-zero
  // schedule.
  require(A >= 0.0 && A <= 1.0, "A", "must satisfy 0 <= A <= 1");
}

double growth_u(double u, const ModelParams& p) {
  return p.s * u * (1.0 - u / p.k_u) * (u / p.k_u - p.m) + u;
}

double decay_v(double v, const ModelParams& p) { return (1.0 - p.gamma) * v; }

double growth_w(double w, const ModelParams& p) {
  return p.q * w * (1.0 - w / p.k_w) * (w / p.k_w - p.n) + w;
}

bool infeasible_regime(const State& x, const ModelParams& p) {
  return p.delta1 * x.v > 1.0;
}

State step_uncontrolled(const State& x, const ModelParams& p) {
  const double fu = growth_u(x.u, p);
  return State{fu * (1.0 - p.delta1 * x.v),
               decay_v(x.v + fu * p.delta2 * x.v, p), growth_w(x.w, p)};
}

State step_model_a(const State& x, double h, const ModelParams& p) {
  const double fu = growth_u(x.u, p);
  const double fw = growth_w(x.w, p);
  return State{fu * (1.0 - p.delta1 * x.v) + h * fw,
               decay_v(x.v + fu * p.delta2 * x.v, p), (1.0 - h) * fw};
}

State step_model_b(const State& x, double h, const ModelParams& p) {
  const double fu = growth_u(x.u + h * x.w, p);
  return State{fu * (1.0 - p.delta1 * x.v),
               decay_v(x.v + fu * p.delta2 * x.v, p),
               growth_w(x.w - h * x.w, p)};
}

Trajectory simulate(ModelKind kind, const State& x0,
                    const ControlSchedule& controls, const ModelParams& p,
                    int steps) {
  if (steps < 0) throw ValidationError("steps: must be nonnegative");
  const bool needs_controls = kind != ModelKind::Uncontrolled;
  if (!controls.empty() || needs_controls) {
    if (static_cast<int>(controls.size()) != steps)
      throw LengthMismatch("control schedule has " +
                           std::to_string(controls.size()) +
                           " entries, expected " + std::to_string(steps));
  }

  Trajectory traj;
  traj.kind = kind;
  traj.controls = controls;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.push_back(x0);
  for (int t = 0; t < steps; ++t) {
    const State& x = traj.states.back();
    if (infeasible_regime(x, p)) traj.infeasible_steps.push_back(t);
    switch (kind) {
      case ModelKind::Uncontrolled:
        traj.states.push_back(step_uncontrolled(x, p));
        break;
      case ModelKind::ModelA:
        traj.states.push_back(step_model_a(x, controls[t], p));
        break;
      case ModelKind::ModelB:
        traj.states.push_back(step_model_b(x, controls[t], p));
        break;
    }
  }
  return traj;
}

double objective(const Trajectory& traj, const ObjectiveParams& obj) {
  if (traj.horizon() != obj.T)
    throw LengthMismatch("trajectory has horizon " +
                         std::to_string(traj.horizon()) + ", expected T = " +
                         std::to_string(obj.T));
  if (!traj.controls.empty() &&
      static_cast<int>(traj.controls.size()) != obj.T)
    throw LengthMismatch("control schedule has " +
                         std::to_string(traj.controls.size()) +
                         " entries, expected " + std::to_string(obj.T));

  const State& xT = traj.final_state();
  double cost = 0.0;
  for (double h : traj.controls) cost += obj.M1 * h * h + obj.M2 * h;
  return xT.u + obj.N * xT.w - cost;
}

}  // namespace augopt
