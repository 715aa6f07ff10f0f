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

#include "direct_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace augopt {

void OptimizerConfig::validate(double control_bound) const {
  if (!(grad_step > 0.0))
    throw ValidationError("grad_step: must be strictly positive");
  if (!(grad_step_floor > 0.0))
    throw ValidationError("grad_step_floor: must be strictly positive");
  if (!(kkt_tol > 0.0))
    throw ValidationError("kkt_tol: must be strictly positive");
  if (max_iter < 1) throw ValidationError("max_iter: must be at least 1");
  for (double s : starts)
    if (s < 0.0 || s > control_bound)
      throw ValidationError("starts: entries must lie in [0, A]");
}

double objective_of_controls(const ControlSchedule& h, const State& x0,
                             const ModelParams& p,
                             const ObjectiveParams& obj) {
  Trajectory traj = simulate(ModelKind::ModelB, x0, h, p, obj.T);
  if (!traj.feasible()) throw InfeasibleRegime(traj.infeasible_steps.front());
  return objective(traj, obj);
}

std::vector<double> gradient(const ControlSchedule& h, const State& x0,
                             const ModelParams& p, const ObjectiveParams& obj,
                             const OptimizerConfig& cfg) {
  const std::size_t T = h.size();
  std::vector<double> g(T, 0.0);
  ControlSchedule probe = h;
  for (std::size_t i = 0; i < T; ++i) {
    const double step =
        std::max(cfg.grad_step * std::abs(h[i]), cfg.grad_step_floor);
    const double lo = h[i] - step, hi = h[i] + step;
    if (lo >= 0.0 && hi <= obj.A) {
      probe[i] = hi;
      const double fp = objective_of_controls(probe, x0, p, obj);
      probe[i] = lo;
      const double fm = objective_of_controls(probe, x0, p, obj);
      g[i] = (fp - fm) / (2.0 * step);
    } else if (lo < 0.0) {
      probe[i] = h[i] + step;
      const double fp = objective_of_controls(probe, x0, p, obj);
      probe[i] = h[i];
      g[i] = (fp - objective_of_controls(probe, x0, p, obj)) / step;
    } else {
      probe[i] = h[i] - step;
      const double fm = objective_of_controls(probe, x0, p, obj);
      probe[i] = h[i];
      g[i] = (objective_of_controls(probe, x0, p, obj) - fm) / step;
    }
    probe[i] = h[i];
  }
  return g;
}

namespace {

ControlSchedule project_box(ControlSchedule h, double upper) {
  for (double& x : h) x = std::clamp(x, 0.0, upper);
  return h;
}

double kkt_residual(const ControlSchedule& h, const std::vector<double>& g,
                    double upper) {
  double r = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    r = std::max(r, std::abs(std::clamp(h[i] + g[i], 0.0, upper) - h[i]));
  return r;
}

// Dense inverse-Hessian BFGS bookkeeping; the control dimension is tiny.
class InverseHessian {
 public:
  explicit InverseHessian(std::size_t n) : n_(n) { reset(); }

  void reset() {
    data_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] = 1.0;
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) y[i] += data_[i * n_ + j] * x[j];
    return y;
  }

  // BFGS update for a maximization written on the ascent gradients:
  // s = h_new - h_old, y = g_old - g_new (curvature of -J).
  void update(const std::vector<double>& s, const std::vector<double>& y) {
    const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    if (sy <= 1e-12) return;
    const double rho = 1.0 / sy;
    const std::vector<double> By = apply(y);
    const double yBy = std::inner_product(y.begin(), y.end(), By.begin(), 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        data_[i * n_ + j] += -rho * (s[i] * By[j] + By[i] * s[j]) +
                             rho * (1.0 + rho * yBy) * s[i] * s[j];
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct StartOutcome {
  ControlSchedule h;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

StartOutcome run_start(double start_value, const State& x0,
                       const ModelParams& p, const ObjectiveParams& obj,
                       const OptimizerConfig& cfg) {
  const std::size_t T = static_cast<std::size_t>(obj.T);
  StartOutcome out;
  out.h.assign(T, start_value);
  std::vector<double> g = gradient(out.h, x0, p, obj, cfg);
  InverseHessian hess(T);
  std::vector<bool> active(T, false);

  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    if (kkt_residual(out.h, g, obj.A) <= cfg.kkt_tol) {
      out.converged = true;
      break;
    }

    // Freeze coordinates pressed against their bound; reset curvature when
    // the active set changes, the quasi-Newton model does not carry over.
    bool changed = false;
    for (std::size_t i = 0; i < T; ++i) {
      const bool a =
          (out.h[i] <= 0.0 && g[i] < 0.0) || (out.h[i] >= obj.A && g[i] > 0.0);
      if (a != active[i]) changed = true;
      active[i] = a;
    }
    if (changed) hess.reset();

    std::vector<double> dir = hess.apply(g);
    for (std::size_t i = 0; i < T; ++i)
      if (active[i]) dir[i] = 0.0;
    double descent =
        std::inner_product(dir.begin(), dir.end(), g.begin(), 0.0);
    if (descent <= 0.0) {  // fall back to the projected gradient
      dir = g;
      for (std::size_t i = 0; i < T; ++i)
        if (active[i]) dir[i] = 0.0;
    }

    // Backtracking line search, Armijo sufficient increase, halving.
    const double f0 = objective_of_controls(out.h, x0, p, obj);
    ControlSchedule next = out.h;
    for (double step = 1.0; step > 1e-16; step *= 0.5) {
      ControlSchedule cand = out.h;
      for (std::size_t i = 0; i < T; ++i) cand[i] += step * dir[i];
      cand = project_box(std::move(cand), obj.A);
      double moved = 0.0;
      for (std::size_t i = 0; i < T; ++i)
        moved += g[i] * (cand[i] - out.h[i]);
      if (objective_of_controls(cand, x0, p, obj) >= f0 + 1e-4 * moved) {
        next = std::move(cand);
        break;
      }
    }

    std::vector<double> g_next = gradient(next, x0, p, obj, cfg);
    std::vector<double> s(T), y(T);
    for (std::size_t i = 0; i < T; ++i) {
      s[i] = next[i] - out.h[i];
      y[i] = g[i] - g_next[i];
    }
    hess.update(s, y);
    out.h = std::move(next);
    g = std::move(g_next);
  }
  out.iterations = it;
  out.value = objective_of_controls(out.h, x0, p, obj);
  return out;
}

}  // namespace

SolveResult solve_direct(const State& x0, const ModelParams& p,
                         const ObjectiveParams& obj,
                         const OptimizerConfig& cfg) {
  p.validate();
  obj.validate();
  cfg.validate(obj.A);

  std::vector<double> starts = cfg.starts;
  if (starts.empty())
    starts = {0.0, obj.A / 4.0, obj.A / 2.0, 3.0 * obj.A / 4.0, obj.A};

  std::optional<StartOutcome> best;
  for (double s0 : starts) {
    StartOutcome out = run_start(s0, x0, p, obj, cfg);
    const bool better =
        !best || out.value > best->value ||
        (out.value == best->value && out.h < best->h);
    if (better) best = std::move(out);
  }

  SolveResult res;
  res.controls = best->h;
  res.trajectory = simulate(ModelKind::ModelB, x0, res.controls, p, obj.T);
  res.objective_value = objective(res.trajectory, obj);
  res.iterations = best->iterations;
  res.converged = best->converged;
  return res;
}

}  // namespace augopt
