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

#include <iosfwd>
#include <string>

#include "direct_opt.hpp"
#include "fbsm.hpp"
#include "model.hpp"

namespace augopt {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioSpec {
  std::string name;
  ModelParams params;
  ObjectiveParams obj;
  State x0;

  void validate() const;
};

/// Outcome of one scenario x model run: objective without control, optimal
/// objective, integer percent increase and the optimizing schedule.
struct RunReport {
  std::string scenario;
  ModelKind model = ModelKind::ModelA;
  double j_no_control = 0.0;
  double j_optimal = 0.0;
  int percent_increase = 0;
  ControlSchedule controls;
  bool converged = false;
  int iterations = 0;
};

/// The five built-in parameter scenarios: the baseline plus its four
/// single/double overrides (M2=0; M2=0 & N=0.1; q=0.70 & k_w=0.60;
/// gamma=0.10). Names double as CLI identifiers.
std::vector<ScenarioSpec> builtin_scenarios();

/// Looks a built-in scenario up by name; throws ValidationError if unknown.
ScenarioSpec builtin_scenario(const std::string& name);

/// Parses the flat `key = value` configuration format (one pair per line,
/// `#` comments, blank lines ignored). Keys: s, k_u, m, delta1, delta2,
/// gamma, q, k_w, n, M1, M2, N, A, T, u0, v0, w0 and an optional `name`.
/// Unspecified keys inherit the baseline scenario's values. Throws
/// ParseError for malformed input or unknown keys, ValidationError (naming
/// the field) for invariant violations.
ScenarioSpec load_scenario(const std::string& text);

/// Inverse of load_scenario: emits every key with full double precision so
/// that load_scenario(serialize_scenario(s)) == s exactly.
std::string serialize_scenario(const ScenarioSpec& spec);

/// Computes the no-control objective from the uncontrolled simulation,
/// dispatches Model A to solve_fbsm and Model B to solve_direct, and
/// assembles the report. `out_result` (optional) receives the full solver
/// output, including the trajectory and adjoints.
RunReport run_scenario(const ScenarioSpec& spec, ModelKind model,
                       const SweepConfig& sweep_cfg,
                       const OptimizerConfig& opt_cfg,
                       SolveResult* out_result = nullptr);

/// Plain-text summary table over a scenario x model grid of reports:
/// scenario label, no-aug J, Model A J (+%), Model B J (+%). J to 4 decimal
/// places, percents as integers.
std::string emit_table(const std::vector<RunReport>& reports);

/// Machine-readable companion of emit_table, one row per report:
/// scenario,model,j0,jopt,percent,h0,...,h{T-1}.
std::string emit_report_csv(const std::vector<RunReport>& reports);

/// Writes the trajectory CSV: header t,u,v,w,h,lambda_u,lambda_v,lambda_w,
/// one row per state, controls and adjoints empty where absent. Values carry
/// full double precision so the file re-simulates bit-exactly.
void emit_csv(const Trajectory& traj, const AdjointTrajectory* adjoints,
              std::ostream& out);
void emit_csv_file(const Trajectory& traj, const AdjointTrajectory* adjoints,
                   const std::string& path);

/// Reads back a file produced by emit_csv: initial state plus the control
/// column (the final row's control field is empty by construction).
struct ParsedTrajectoryCsv {
  State x0;
  ControlSchedule controls;
  std::vector<State> states;
};
ParsedTrajectoryCsv parse_trajectory_csv(const std::string& text);

}  // namespace augopt
