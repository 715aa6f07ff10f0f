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

#include "augopt/augopt.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "direct_opt.hpp"
#include "fbsm.hpp"
#include "model.hpp"
#include "scenario.hpp"

struct augopt_scenario {
  augopt::ScenarioSpec spec;
};

struct augopt_result {
  augopt::SolveResult inner;
};

namespace {

thread_local std::string g_last_error;

augopt_status fail(augopt_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Translates the C++ error taxonomy onto status codes.
augopt_status classify(const std::exception& e) {
  if (dynamic_cast<const augopt::LengthMismatch*>(&e))
    return fail(AUGOPT_ERR_LENGTH_MISMATCH, e.what());
  if (dynamic_cast<const augopt::ParseError*>(&e))
    return fail(AUGOPT_ERR_PARSE, e.what());
  if (dynamic_cast<const augopt::ValidationError*>(&e))
    return fail(AUGOPT_ERR_VALIDATION, e.what());
  if (dynamic_cast<const augopt::InfeasibleRegime*>(&e))
    return fail(AUGOPT_ERR_INFEASIBLE_REGIME, e.what());
  if (dynamic_cast<const augopt::IoError*>(&e))
    return fail(AUGOPT_ERR_IO, e.what());
  return fail(AUGOPT_ERR_INVALID_ARGUMENT, e.what());
}

template <typename Fn>
augopt_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return classify(e);
  }
}

augopt::SweepConfig sweep_config(const augopt_solver_options* o) {
  augopt::SweepConfig cfg;
  if (o) {
    if (o->sweep_relaxation != 0.0) cfg.relaxation = o->sweep_relaxation;
    if (o->sweep_tol != 0.0) cfg.tol = o->sweep_tol;
    if (o->sweep_max_iter != 0) cfg.max_iter = o->sweep_max_iter;
  }
  return cfg;
}

augopt::OptimizerConfig optimizer_config(const augopt_solver_options* o) {
  augopt::OptimizerConfig cfg;
  if (o) {
    if (o->starts && o->n_starts > 0)
      cfg.starts.assign(o->starts, o->starts + o->n_starts);
    if (o->kkt_tol != 0.0) cfg.kkt_tol = o->kkt_tol;
    if (o->grad_step != 0.0) cfg.grad_step = o->grad_step;
    if (o->opt_max_iter != 0) cfg.max_iter = o->opt_max_iter;
  }
  return cfg;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* augopt_last_error(void) { return g_last_error.c_str(); }

const char* augopt_builtin_name(size_t idx) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : augopt::builtin_scenarios()) out.push_back(s.name);
    return out;
  }();
  return idx < names.size() ? names[idx].c_str() : nullptr;
}

augopt_status augopt_scenario_builtin(const char* name,
                                      augopt_scenario** out) {
  if (!name || !out)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new augopt_scenario{augopt::builtin_scenario(name)};
    return AUGOPT_OK;
  });
}

augopt_status augopt_scenario_from_text(const char* text,
                                        augopt_scenario** out) {
  if (!text || !out)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new augopt_scenario{augopt::load_scenario(text)};
    return AUGOPT_OK;
  });
}

augopt_status augopt_scenario_from_file(const char* path,
                                        augopt_scenario** out) {
  if (!path || !out)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> augopt_status {
    std::ifstream in(path);
    if (!in)
      return fail(AUGOPT_ERR_IO,
                  std::string("cannot open '") + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new augopt_scenario{augopt::load_scenario(buf.str())};
    return AUGOPT_OK;
  });
}

augopt_status augopt_scenario_to_text(const augopt_scenario* scenario,
                                      char** out_text) {
  if (!scenario || !out_text)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = copy_string(augopt::serialize_scenario(scenario->spec));
    return AUGOPT_OK;
  });
}

const char* augopt_scenario_name(const augopt_scenario* scenario) {
  return scenario ? scenario->spec.name.c_str() : nullptr;
}

int augopt_scenario_horizon(const augopt_scenario* scenario) {
  return scenario ? scenario->spec.obj.T : -1;
}

augopt_status augopt_scenario_no_control_objective(
    const augopt_scenario* scenario, double* out_j0) {
  if (!scenario || !out_j0)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto traj =
        augopt::simulate(augopt::ModelKind::Uncontrolled, scenario->spec.x0,
                         {}, scenario->spec.params, scenario->spec.obj.T);
    *out_j0 = augopt::objective(traj, scenario->spec.obj);
    return AUGOPT_OK;
  });
}

void augopt_scenario_free(augopt_scenario* scenario) { delete scenario; }

augopt_status augopt_simulate(const augopt_scenario* scenario,
                              augopt_model model, const double* controls,
                              size_t n_controls, augopt_result** out) {
  if (!scenario || !out)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> augopt_status {
    augopt::ModelKind kind;
    switch (model) {
      case AUGOPT_MODEL_UNCONTROLLED:
        kind = augopt::ModelKind::Uncontrolled;
        break;
      case AUGOPT_MODEL_A:
        kind = augopt::ModelKind::ModelA;
        break;
      case AUGOPT_MODEL_B:
        kind = augopt::ModelKind::ModelB;
        break;
      default:
        return fail(AUGOPT_ERR_INVALID_ARGUMENT, "unknown model tag");
    }
    augopt::ControlSchedule h;
    if (controls) h.assign(controls, controls + n_controls);
    augopt::SolveResult res;
    res.trajectory = augopt::simulate(kind, scenario->spec.x0, h,
                                      scenario->spec.params,
                                      scenario->spec.obj.T);
    res.controls = res.trajectory.controls;
    res.objective_value =
        augopt::objective(res.trajectory, scenario->spec.obj);
    res.converged = true;
    const bool feasible = res.trajectory.feasible();
    const int first_bad =
        feasible ? -1 : res.trajectory.infeasible_steps.front();
    *out = new augopt_result{std::move(res)};
    if (!feasible)
      return fail(AUGOPT_ERR_INFEASIBLE_REGIME,
                  "infeasible regime (delta1*v > 1) at step " +
                      std::to_string(first_bad));
    return AUGOPT_OK;
  });
}

augopt_status augopt_solve(const augopt_scenario* scenario,
                           augopt_model model,
                           const augopt_solver_options* options,
                           augopt_result** out) {
  if (!scenario || !out)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (model != AUGOPT_MODEL_A && model != AUGOPT_MODEL_B)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT,
                "solve requires AUGOPT_MODEL_A or AUGOPT_MODEL_B");
  return guarded([&]() -> augopt_status {
    augopt::SolveResult res =
        model == AUGOPT_MODEL_A
            ? augopt::solve_fbsm(scenario->spec.x0, scenario->spec.params,
                                 scenario->spec.obj, sweep_config(options))
            : augopt::solve_direct(scenario->spec.x0, scenario->spec.params,
                                   scenario->spec.obj,
                                   optimizer_config(options));
    const bool converged = res.converged;
    *out = new augopt_result{std::move(res)};
    if (!converged)
      return fail(AUGOPT_ERR_NOT_CONVERGED,
                  "solver reached the iteration cap before convergence");
    return AUGOPT_OK;
  });
}

double augopt_result_objective(const augopt_result* result) {
  return result ? result->inner.objective_value : 0.0;
}

int augopt_result_iterations(const augopt_result* result) {
  return result ? result->inner.iterations : 0;
}

int augopt_result_converged(const augopt_result* result) {
  return result && result->inner.converged ? 1 : 0;
}

int augopt_result_horizon(const augopt_result* result) {
  return result ? result->inner.trajectory.horizon() : -1;
}

size_t augopt_result_num_controls(const augopt_result* result) {
  return result ? result->inner.controls.size() : 0;
}

augopt_status augopt_result_controls(const augopt_result* result,
                                     double* buf) {
  if (!result || !buf)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  std::memcpy(buf, result->inner.controls.data(),
              result->inner.controls.size() * sizeof(double));
  return AUGOPT_OK;
}

augopt_status augopt_result_state(const augopt_result* result, int t,
                                  double out_uvw[3]) {
  if (!result || !out_uvw)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (t < 0 || t > result->inner.trajectory.horizon())
    return fail(AUGOPT_ERR_INVALID_ARGUMENT,
                "state index out of range: " + std::to_string(t));
  const augopt::State& x =
      result->inner.trajectory.states[static_cast<std::size_t>(t)];
  out_uvw[0] = x.u;
  out_uvw[1] = x.v;
  out_uvw[2] = x.w;
  return AUGOPT_OK;
}

int augopt_result_has_adjoints(const augopt_result* result) {
  return result && result->inner.adjoints.has_value() ? 1 : 0;
}

augopt_status augopt_result_adjoint(const augopt_result* result, int t,
                                    double out_lambda[3]) {
  if (!result || !out_lambda)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (!result->inner.adjoints)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "result has no adjoints");
  if (t < 0 || t > result->inner.trajectory.horizon())
    return fail(AUGOPT_ERR_INVALID_ARGUMENT,
                "adjoint index out of range: " + std::to_string(t));
  const auto lam = result->inner.adjoints->at(t);
  out_lambda[0] = lam[0];
  out_lambda[1] = lam[1];
  out_lambda[2] = lam[2];
  return AUGOPT_OK;
}

augopt_status augopt_result_write_csv(const augopt_result* result,
                                      const char* path) {
  if (!result || !path)
    return fail(AUGOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    augopt::emit_csv_file(
        result->inner.trajectory,
        result->inner.adjoints ? &*result->inner.adjoints : nullptr, path);
    return AUGOPT_OK;
  });
}

void augopt_result_free(augopt_result* result) { delete result; }

augopt_status augopt_run_table(const augopt_solver_options* options,
                               char** out_table_text, char** out_report_csv) {
  return guarded([&]() -> augopt_status {
    std::vector<augopt::RunReport> reports;
    bool all_converged = true;
    for (const augopt::ScenarioSpec& spec : augopt::builtin_scenarios()) {
      for (augopt::ModelKind kind :
           {augopt::ModelKind::ModelA, augopt::ModelKind::ModelB}) {
        augopt::RunReport r =
            augopt::run_scenario(spec, kind, sweep_config(options),
                                 optimizer_config(options));
        all_converged = all_converged && r.converged;
        reports.push_back(std::move(r));
      }
    }
    if (out_table_text) *out_table_text = copy_string(emit_table(reports));
    if (out_report_csv)
      *out_report_csv = copy_string(emit_report_csv(reports));
    if (!all_converged)
      return fail(AUGOPT_ERR_NOT_CONVERGED,
                  "one or more grid cells did not converge");
    return AUGOPT_OK;
  });
}

void augopt_string_free(char* text) { delete[] text; }

}  // extern "C"
