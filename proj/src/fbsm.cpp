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

#include "fbsm.hpp"

#include <algorithm>
#include <cmath>

namespace augopt {

void SweepConfig::validate() const {
  if (!(relaxation > 0.0 && relaxation <= 1.0))
    throw ValidationError("relaxation: must be in (0, 1]");
  if (!(tol > 0.0)) throw ValidationError("tol: must be strictly positive");
  if (max_iter < 1) throw ValidationError("max_iter: must be at least 1");
}

std::array<double, 3> adjoint_step(const State& x, double h,
                                   const std::array<double, 3>& lam_next,
                                   const ModelParams& p) {
  const double u = x.u, v = x.v, w = x.w;
  const double lu = lam_next[0], lv = lam_next[1], lw = lam_next[2];

  // Prey growth bracket s(1-u/k_u)(u/k_u-m)+1 and its derivative group
  // (s/k_u)(1-u/k_u) - (s/k_u)(u/k_u-m).
  const double fb = p.s * (1.0 - u / p.k_u) * (u / p.k_u - p.m) + 1.0;
  const double fbp =
      (p.s / p.k_u) * (1.0 - u / p.k_u) - (p.s / p.k_u) * (u / p.k_u - p.m);
  // Reserve growth bracket and derivative group.
  const double gb = p.q * (1.0 - w / p.k_w) * (w / p.k_w - p.n) + 1.0;
  const double gbp =
      (p.q / p.k_w) * (1.0 - w / p.k_w) - (p.q / p.k_w) * (w / p.k_w - p.n);

  const double lam_u =
      ((1.0 - p.delta1 * v) * lu + p.delta2 * v * (1.0 - p.gamma) * lv) * fb +
      (u * (1.0 - p.delta1 * v) * lu +
       u * p.delta2 * v * (1.0 - p.gamma) * lv) *
          fbp;
  const double lam_v = -lu * u * fb * p.delta1 +
                       lv * (1.0 + u * fb * p.delta2) * (1.0 - p.gamma);
  const double mix = h * lu + (1.0 - h) * lw;
  const double lam_w = mix * gb + w * mix * gbp;
  return {lam_u, lam_v, lam_w};
}

double characterize_control(double w, double lam_u_next, double lam_w_next,
                            const ModelParams& p, const ObjectiveParams& obj) {
  const double gb = p.q * (1.0 - w / p.k_w) * (w / p.k_w - p.n) + 1.0;
  const double interior =
      ((lam_u_next - lam_w_next) * gb * w - obj.M2) / (2.0 * obj.M1);
  return std::min(obj.A, std::max(0.0, interior));
}

double hamiltonian_a(const State& x, double h,
                     const std::array<double, 3>& lam_next,
                     const ModelParams& p, const ObjectiveParams& obj) {
  const State next = step_model_a(x, h, p);
  return -obj.M1 * h * h - obj.M2 * h + lam_next[0] * next.u +
         lam_next[1] * next.v + lam_next[2] * next.w;
}

namespace {

// Relative closeness test: tol*sum|new| - sum|new - old| >= 0.
bool close_enough(const std::vector<double>& now,
                  const std::vector<double>& before, double tol) {
  double norm = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i) {
    norm += std::abs(now[i]);
    diff += std::abs(now[i] - before[i]);
  }
  return tol * norm - diff >= 0.0;
}

std::vector<double> flatten(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.states.size() * 3);
  for (const State& x : traj.states) {
    out.push_back(x.u);
    out.push_back(x.v);
    out.push_back(x.w);
  }
  return out;
}

std::vector<double> flatten(const AdjointTrajectory& lam) {
  std::vector<double> out;
  out.reserve(lam.lambda_u.size() * 3);
  for (std::size_t t = 0; t < lam.lambda_u.size(); ++t) {
    out.push_back(lam.lambda_u[t]);
    out.push_back(lam.lambda_v[t]);
    out.push_back(lam.lambda_w[t]);
  }
  return out;
}

AdjointTrajectory backward_pass(const Trajectory& traj,
                                const ControlSchedule& h, const ModelParams& p,
                                const ObjectiveParams& obj) {
  const int T = obj.T;
  AdjointTrajectory lam;
  lam.lambda_u.assign(static_cast<std::size_t>(T) + 1, 0.0);
  lam.lambda_v.assign(static_cast<std::size_t>(T) + 1, 0.0);
  lam.lambda_w.assign(static_cast<std::size_t>(T) + 1, 0.0);
  lam.lambda_u[static_cast<std::size_t>(T)] = 1.0;
  lam.lambda_v[static_cast<std::size_t>(T)] = 0.0;
  lam.lambda_w[static_cast<std::size_t>(T)] = obj.N;
  for (int t = T - 1; t >= 0; --t) {
    const auto here =
        adjoint_step(traj.states[static_cast<std::size_t>(t)],
                     h[static_cast<std::size_t>(t)], lam.at(t + 1), p);
    lam.lambda_u[static_cast<std::size_t>(t)] = here[0];
    lam.lambda_v[static_cast<std::size_t>(t)] = here[1];
    lam.lambda_w[static_cast<std::size_t>(t)] = here[2];
  }
  return lam;
}

}  // namespace

SolveResult solve_fbsm(const State& x0, const ModelParams& p,
                       const ObjectiveParams& obj, const SweepConfig& cfg) {
  p.validate();
  obj.validate();
  cfg.validate();
  const int T = obj.T;

  ControlSchedule h(static_cast<std::size_t>(T), 0.0);
  Trajectory traj = simulate(ModelKind::ModelA, x0, h, p, T);
  if (!traj.feasible()) throw InfeasibleRegime(traj.infeasible_steps.front());
  AdjointTrajectory lam = backward_pass(traj, h, p, obj);

  SolveResult res;
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iter && !converged; ++it) {
    const ControlSchedule h_old = h;
    const std::vector<double> states_old = flatten(traj);
    const std::vector<double> lam_old = flatten(lam);

    for (int t = 0; t < T; ++t) {
      const double hc = characterize_control(
          traj.states[static_cast<std::size_t>(t)].w, lam.lambda_u[static_cast<std::size_t>(t) + 1],
          lam.lambda_w[static_cast<std::size_t>(t) + 1], p, obj);
      h[static_cast<std::size_t>(t)] = cfg.relaxation * hc +
                                       (1.0 - cfg.relaxation) *
                                           h_old[static_cast<std::size_t>(t)];
    }
    traj = simulate(ModelKind::ModelA, x0, h, p, T);
    if (!traj.feasible())
      throw InfeasibleRegime(traj.infeasible_steps.front());
    lam = backward_pass(traj, h, p, obj);

    converged = close_enough(h, h_old, cfg.tol) &&
                close_enough(flatten(traj), states_old, cfg.tol) &&
                close_enough(flatten(lam), lam_old, cfg.tol);
  }

  res.controls = h;
  res.trajectory = std::move(traj);
  res.adjoints = std::move(lam);
  res.objective_value = objective(res.trajectory, obj);
  res.iterations = it;
  res.converged = converged;
  return res;
}

}  // namespace augopt
