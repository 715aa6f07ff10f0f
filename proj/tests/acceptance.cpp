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

// Acceptance gate: reproduces the published reference results and checks the
// solver's structural guarantees. Each criterion prints one pass/fail line;
// the process exits with the number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "direct_opt.hpp"
#include "fbsm.hpp"
#include "scenario.hpp"

using namespace augopt;

namespace {

struct Reference {
  const char* scenario;
  std::array<double, 6> controls;
  double j;
  int percent;
};

// Reference optima reported for the growth-first model (one per scenario).
const Reference kRefA[] = {
    {"baseline", {0, 0, 0, 0, 0.04, 0.30}, 0.4896, 11},
    {"m2-zero", {0, 0, 0.01, 0.06, 0.05, 0.48}, 0.5794, 31},
    {"m2-zero-n-0.10", {0, 0, 0.01, 0.06, 0, 0.9}, 0.4662, 284},
    {"q-0.70-kw-0.60", {0, 0, 0, 0, 0, 0.19}, 0.3559, 4},
    {"gamma-0.10", {0, 0, 0, 0.04, 0.05, 0.19}, 0.5235, 15},
};

// Reference optima for the augmentation-first model.
const Reference kRefB[] = {
    {"baseline", {0, 0, 0, 0.05, 0.08, 0.15}, 0.4825, 9},
    {"m2-zero", {0, 0, 0.05, 0.08, 0.11, 0.21}, 0.5379, 22},
    {"m2-zero-n-0.10", {0, 0, 0.02, 0.07, 0, 0.14}, 0.3178, 162},
    {"q-0.70-kw-0.60", {0, 0, 0, 0.03, 0.06, 0.10}, 0.3559, 4},
    {"gamma-0.10", {0, 0, 0.05, 0.08, 0.10, 0.16}, 0.5299, 16},
};

int g_failures = 0;

void report(int criterion, const char* label, bool ok,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              label, detail.empty() ? "" : " | ", detail.c_str());
  if (!ok) ++g_failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// J of the reference schedule under the given scenario and step map. The
// reference vectors are rounded to two decimals but remain feasible points
// (one lies outside the box; it is evaluated as printed).
double j_of(const ScenarioSpec& sc, ModelKind kind,
            const std::array<double, 6>& h) {
  const ControlSchedule ctl(h.begin(), h.end());
  const Trajectory t = simulate(kind, sc.x0, ctl, sc.params, sc.obj.T);
  return objective(t, sc.obj);
}

SolveResult solve_for(const ScenarioSpec& sc, ModelKind kind) {
  if (kind == ModelKind::ModelA)
    return solve_fbsm(sc.x0, sc.params, sc.obj, SweepConfig{});
  return solve_direct(sc.x0, sc.params, sc.obj, OptimizerConfig{});
}

std::string fmt_schedule(const ControlSchedule& h) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "[";
  for (std::size_t i = 0; i < h.size(); ++i)
    out << (i ? "," : "") << h[i];
  out << "]";
  return out.str();
}

void criterion1() {
  const struct {
    const char* scenario;
    double j0;
  } rows[] = {
      {"baseline", 0.4413},
      {"q-0.70-kw-0.60", 0.3418},
      {"gamma-0.10", 0.45724},
      {"m2-zero-n-0.10", 0.1215},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const auto& row : rows) {
    const ScenarioSpec sc = builtin_scenario(row.scenario);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory traj =
        simulate(ModelKind::Uncontrolled, sc.x0, {}, sc.params, sc.obj.T);
    const double j0 = objective(traj, sc.obj);
    const double elapsed = ms_since(t0);
    if (std::abs(j0 - row.j0) > 5e-5 || elapsed >= 1.0) {
      ok = false;
      detail << row.scenario << " J0=" << j0 << " want " << row.j0 << " ";
    }
  }
  report(1, "no-control objective oracle", ok, detail.str());
}

void criterion2() {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& ref : kRefA) {
    const ScenarioSpec sc = builtin_scenario(ref.scenario);
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult r = solve_for(sc, ModelKind::ModelA);
    const double elapsed = ms_since(t0);
    bool row_ok = r.converged && elapsed < 1000.0 &&
                  std::abs(r.objective_value - ref.j) <= 0.01;
    for (std::size_t i = 0; i < 6; ++i)
      if (std::abs(r.controls[i] - ref.controls[i]) > 0.03) row_ok = false;
    if (!row_ok) {
      ok = false;
      detail << ref.scenario << " got " << fmt_schedule(r.controls) << "/"
             << r.objective_value << " want J=" << ref.j << "; ";
    }
  }
  report(2, "growth-first reference optima", ok, detail.str());
}

void criterion3() {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& ref : kRefB) {
    const ScenarioSpec sc = builtin_scenario(ref.scenario);
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult r = solve_for(sc, ModelKind::ModelB);
    const double elapsed = ms_since(t0);
    bool exact = r.converged && std::abs(r.objective_value - ref.j) <= 0.01;
    for (std::size_t i = 0; i < 6; ++i)
      if (std::abs(r.controls[i] - ref.controls[i]) > 0.03) exact = false;
    // A missed entry is acceptable only if our optimum still dominates the
    // reference point.
    const bool dominant =
        r.converged &&
        r.objective_value >= j_of(sc, ModelKind::ModelB, ref.controls) - 1e-6;
    if (elapsed >= 10000.0 || (!exact && !dominant)) {
      ok = false;
      detail << ref.scenario << " got " << fmt_schedule(r.controls) << "/"
             << r.objective_value << "; ";
    }
  }
  report(3, "augmentation-first reference optima", ok, detail.str());
}

void criterion4() {
  bool ok = true;
  std::ostringstream detail;
  for (int model = 0; model < 2; ++model) {
    const Reference* refs = model == 0 ? kRefA : kRefB;
    const ModelKind kind = model == 0 ? ModelKind::ModelA : ModelKind::ModelB;
    for (int i = 0; i < 5; ++i) {
      const ScenarioSpec sc = builtin_scenario(refs[i].scenario);
      const RunReport rep =
          run_scenario(sc, kind, SweepConfig{}, OptimizerConfig{});
      if (std::abs(rep.percent_increase - refs[i].percent) > 1) {
        ok = false;
        detail << refs[i].scenario << (model == 0 ? "/A " : "/B ") << "got "
               << rep.percent_increase << "% want " << refs[i].percent
               << "%; ";
      }
    }
  }
  report(4, "percentage table", ok, detail.str());
}

void criterion5() {
  bool ok = true;
  std::ostringstream detail;
  for (int model = 0; model < 2; ++model) {
    const Reference* refs = model == 0 ? kRefA : kRefB;
    const ModelKind kind = model == 0 ? ModelKind::ModelA : ModelKind::ModelB;
    for (int i = 0; i < 5; ++i) {
      const ScenarioSpec sc = builtin_scenario(refs[i].scenario);
      const SolveResult r = solve_for(sc, kind);
      const double j_ref = j_of(sc, kind, refs[i].controls);
      if (!(r.objective_value >= j_ref - 1e-6)) {
        ok = false;
        detail << refs[i].scenario << (model == 0 ? "/A " : "/B ") << "J="
               << r.objective_value << " < ref " << j_ref << "; ";
      }
    }
  }
  report(5, "dominance over reference schedules", ok, detail.str());
}

void criterion6() {
  const ScenarioSpec sc = builtin_scenario("baseline");
  const ModelParams& p = sc.params;
  const ObjectiveParams& obj = sc.obj;
  bool ok = true;
  std::ostringstream detail;

  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> ctrl(0.0, obj.A);
  const double eps = 1e-6;
  double worst = 0.0;
  for (int rep = 0; rep < 50 && ok; ++rep) {
    ControlSchedule h(6);
    for (double& v : h) v = ctrl(rng);
    const Trajectory traj =
        simulate(ModelKind::ModelA, sc.x0, h, p, obj.T);
    std::vector<std::array<double, 3>> lam(7);
    lam[6] = {1.0, 0.0, obj.N};
    for (int t = 5; t >= 0; --t)
      lam[t] = adjoint_step(traj.states[t], h[t], lam[t + 1], p);
    for (int t = 0; t < 6; ++t) {
      const double w = traj.states[t].w;
      const double bracket =
          p.q * (1.0 - w / p.k_w) * (w / p.k_w - p.n) + 1.0;
      const double analytic = (lam[t + 1][0] - lam[t + 1][2]) * bracket * w -
                              obj.M2 - 2.0 * obj.M1 * h[t];
      ControlSchedule hp = h, hm = h;
      hp[t] += eps;
      hm[t] -= eps;
      const double jp = objective(
          simulate(ModelKind::ModelA, sc.x0, hp, p, obj.T), obj);
      const double jm = objective(
          simulate(ModelKind::ModelA, sc.x0, hm, p, obj.T), obj);
      const double fd = (jp - jm) / (2 * eps);
      const double rel =
          std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, rel);
      if (rel > 1e-4) {
        ok = false;
        detail << "rel err " << rel << " at t=" << t << "; ";
        break;
      }
    }
  }

  const SolveResult r = solve_direct(sc.x0, p, obj);
  const auto g = gradient(r.controls, sc.x0, p, obj);
  double kkt = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double stepped =
        std::min(obj.A, std::max(0.0, r.controls[i] + g[i]));
    kkt = std::max(kkt, std::abs(stepped - r.controls[i]));
  }
  if (kkt > 1e-6) {
    ok = false;
    detail << "KKT residual " << kkt << "; ";
  }
  std::ostringstream summary;
  summary << "worst adjoint/FD rel err " << worst << ", KKT " << kkt;
  report(6, "gradient and adjoint consistency", ok,
         ok ? summary.str() : detail.str());
}

void criterion7() {
  bool ok = true;
  std::ostringstream detail;
  const ModelParams p;
  const ObjectiveParams obj;
  const State x0{0.2, 0.5, 0.7};

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pop(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const State x{pop(rng), pop(rng), pop(rng)};
    const State s0 = step_uncontrolled(x, p);
    const State sa = step_model_a(x, 0.0, p);
    const State sb = step_model_b(x, 0.0, p);
    if (s0.u != sa.u || s0.v != sa.v || s0.w != sa.w || s0.u != sb.u ||
        s0.v != sb.v || s0.w != sb.w) {
      ok = false;
      detail << "zero-control equivalence; ";
      break;
    }
  }

  for (double u : {0.0, p.m * p.k_u, p.k_u})
    for (double w : {0.0, p.n * p.k_w, p.k_w}) {
      const State y = step_uncontrolled({u, 0.0, w}, p);
      if (std::abs(y.u - u) > 1e-12 || y.v != 0.0 ||
          std::abs(y.w - w) > 1e-12) {
        ok = false;
        detail << "fixed point (" << u << "," << w << "); ";
      }
    }

  for (int i = 1; i < 100; ++i) {
    const double u = i / 100.0 * p.k_u;
    const double g = growth_u(u, p) - u;
    const double thr = p.m * p.k_u;
    if ((u < thr - 1e-9 && g >= 0.0) ||
        (u > thr + 1e-9 && u < p.k_u - 1e-9 && g <= 0.0)) {
      ok = false;
      detail << "Allee sign at u=" << u << "; ";
      break;
    }
  }

  SweepConfig cfg;
  cfg.tol = 1e-6;
  cfg.max_iter = 20000;
  const SolveResult r = solve_fbsm(x0, p, obj, cfg);
  if (!r.converged || !r.adjoints.has_value()) {
    ok = false;
    detail << "sweep did not converge; ";
  } else {
    const auto lamT = r.adjoints->at(6);
    if (lamT[0] != 1.0 || lamT[1] != 0.0 || lamT[2] != obj.N) {
      ok = false;
      detail << "transversality; ";
    }
    for (std::size_t t = 0; t < r.controls.size(); ++t) {
      const auto lam_next = r.adjoints->at(static_cast<int>(t) + 1);
      const double hc = characterize_control(
          r.trajectory.states[t].w, lam_next[0], lam_next[2], p, obj);
      if (std::abs(hc - r.controls[t]) > 1e-3) {
        ok = false;
        detail << "characterization fixed point at t=" << t << "; ";
      }
    }
  }

  const ControlSchedule h{0.0, 0.03, 0.11, 0.07, 0.21, 0.33};
  const Trajectory t = simulate(ModelKind::ModelA, x0, h, p, 6);
  std::ostringstream csv;
  emit_csv(t, nullptr, csv);
  const ParsedTrajectoryCsv parsed = parse_trajectory_csv(csv.str());
  const Trajectory replay =
      simulate(ModelKind::ModelA, parsed.x0, parsed.controls, p, 6);
  for (std::size_t i = 0; i < t.states.size(); ++i)
    if (replay.states[i].u != t.states[i].u ||
        replay.states[i].v != t.states[i].v ||
        replay.states[i].w != t.states[i].w) {
      ok = false;
      detail << "CSV round trip; ";
      break;
    }

  report(7, "structural property suite", ok, detail.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%d of 7 criteria failed\n", g_failures);
  return g_failures;
}
