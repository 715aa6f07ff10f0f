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

// Command-line front end; talks to the solver library exclusively through
// the C API in augopt/augopt.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "augopt/augopt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ScenarioPtr =
    std::unique_ptr<augopt_scenario, decltype(&augopt_scenario_free)>;
using ResultPtr =
    std::unique_ptr<augopt_result, decltype(&augopt_result_free)>;

ScenarioPtr open_scenario(const std::string& name_or_file) {
  augopt_scenario* raw = nullptr;
  for (size_t i = 0; augopt_builtin_name(i); ++i) {
    if (name_or_file == augopt_builtin_name(i)) {
      if (augopt_scenario_builtin(name_or_file.c_str(), &raw) != AUGOPT_OK)
        throw InputError(augopt_last_error());
      return {raw, augopt_scenario_free};
    }
  }
  if (augopt_scenario_from_file(name_or_file.c_str(), &raw) != AUGOPT_OK)
    throw InputError(augopt_last_error());
  return {raw, augopt_scenario_free};
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw InputError("not a number in control list: '" + token + "'");
    }
  }
  return out;
}

// Accepts an inline comma-separated list or a path to either a plain list
// or a trajectory CSV (the h column is used).
std::vector<double> load_controls(const std::string& arg) {
  if (!std::filesystem::exists(arg)) return parse_number_list(arg);
  std::ifstream in(arg);
  if (!in) throw InputError("cannot open controls file '" + arg + "'");
  std::string line;
  if (!std::getline(in, line))
    throw InputError("controls file '" + arg + "' is empty");
  if (line.rfind("t,u,v,w,h", 0) == 0) {
    std::vector<double> controls;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::stringstream row(line);
      std::string field;
      while (std::getline(row, field, ',')) fields.push_back(field);
      if (fields.size() > 4 && !fields[4].empty())
        controls.push_back(std::stod(fields[4]));
    }
    return controls;
  }
  std::string rest((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_number_list(line + rest);
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create output directory '" + dir +
                     "': " + ec.message());
}

void write_text_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw InputError("cannot write '" + path + "'");
}

void print_schedule(const augopt_result* result) {
  const size_t n = augopt_result_num_controls(result);
  std::vector<double> h(n);
  augopt_result_controls(result, h.data());
  std::printf("controls:");
  for (double x : h) std::printf(" %.4f", x);
  std::printf("\n");
}

int cmd_simulate(const std::string& scenario_arg,
                 const std::string& controls_arg,
                 const std::string& model_arg, const std::string& out_dir) {
  ScenarioPtr scenario = open_scenario(scenario_arg);
  std::vector<double> controls;
  if (!controls_arg.empty()) controls = load_controls(controls_arg);

  augopt_model model = AUGOPT_MODEL_UNCONTROLLED;
  if (model_arg == "a" || (model_arg.empty() && !controls.empty()))
    model = AUGOPT_MODEL_A;
  else if (model_arg == "b")
    model = AUGOPT_MODEL_B;
  else if (!model_arg.empty() && model_arg != "none")
    throw InputError("unknown model '" + model_arg + "'");

  ensure_out_dir(out_dir);
  augopt_result* raw = nullptr;
  const augopt_status rc = augopt_simulate(
      scenario.get(), model, controls.empty() ? nullptr : controls.data(),
      controls.size(), &raw);
  if (rc != AUGOPT_OK && rc != AUGOPT_ERR_INFEASIBLE_REGIME)
    throw InputError(augopt_last_error());
  ResultPtr result(raw, augopt_result_free);

  const std::string csv_path = out_dir + "/trajectory.csv";
  if (augopt_result_write_csv(result.get(), csv_path.c_str()) != AUGOPT_OK)
    throw InputError(augopt_last_error());
  std::printf("scenario: %s\n", augopt_scenario_name(scenario.get()));
  std::printf("objective: %.4f\n", augopt_result_objective(result.get()));
  std::printf("wrote %s\n", csv_path.c_str());
  if (rc == AUGOPT_ERR_INFEASIBLE_REGIME)
    std::fprintf(stderr, "warning: %s\n", augopt_last_error());
  return kExitOk;
}

int cmd_solve(const std::string& scenario_arg, const std::string& model_arg,
              const std::string& out_dir,
              const augopt_solver_options& options) {
  if (model_arg != "a" && model_arg != "b")
    throw InputError("--model must be 'a' or 'b'");
  const augopt_model model =
      model_arg == "a" ? AUGOPT_MODEL_A : AUGOPT_MODEL_B;

  ScenarioPtr scenario = open_scenario(scenario_arg);
  ensure_out_dir(out_dir);

  augopt_result* raw = nullptr;
  const augopt_status rc = augopt_solve(scenario.get(), model, &options, &raw);
  if (rc != AUGOPT_OK && rc != AUGOPT_ERR_NOT_CONVERGED)
    throw InputError(augopt_last_error());
  ResultPtr result(raw, augopt_result_free);

  const std::string csv_path = out_dir + "/trajectory.csv";
  if (augopt_result_write_csv(result.get(), csv_path.c_str()) != AUGOPT_OK)
    throw InputError(augopt_last_error());

  double j0 = 0.0;
  augopt_scenario_no_control_objective(scenario.get(), &j0);
  const double jopt = augopt_result_objective(result.get());
  std::printf("scenario: %s\n", augopt_scenario_name(scenario.get()));
  std::printf("model: %s\n", model_arg.c_str());
  print_schedule(result.get());
  std::printf("J(0) = %.4f\n", j0);
  std::printf("J(h*) = %.4f (%+.0f%%)\n", jopt, 100.0 * (jopt / j0 - 1.0));
  std::printf("iterations: %d\n", augopt_result_iterations(result.get()));
  std::printf("wrote %s\n", csv_path.c_str());
  if (rc == AUGOPT_ERR_NOT_CONVERGED) {
    std::fprintf(stderr, "error: %s\n", augopt_last_error());
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_table(const std::string& out_dir,
              const augopt_solver_options& options) {
  ensure_out_dir(out_dir);
  char* table_text = nullptr;
  char* report_csv = nullptr;
  const augopt_status rc = augopt_run_table(&options, &table_text, &report_csv);
  if (rc != AUGOPT_OK && rc != AUGOPT_ERR_NOT_CONVERGED)
    throw InputError(augopt_last_error());
  std::unique_ptr<char, decltype(&augopt_string_free)> text_guard(
      table_text, augopt_string_free);
  std::unique_ptr<char, decltype(&augopt_string_free)> csv_guard(
      report_csv, augopt_string_free);

  write_text_file(out_dir + "/table.txt", table_text);
  write_text_file(out_dir + "/table.csv", report_csv);
  std::printf("%s", table_text);
  std::printf("wrote %s/table.txt and %s/table.csv\n", out_dir.c_str(),
              out_dir.c_str());
  if (rc == AUGOPT_ERR_NOT_CONVERGED) {
    std::fprintf(stderr, "error: %s\n", augopt_last_error());
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal augmentation schedules for a predator-prey-reserve "
               "system"};
  app.require_subcommand(1);

  std::string scenario_arg = "baseline";
  std::string controls_arg, model_arg, out_dir = ".";
  augopt_solver_options options{};
  std::string starts_arg;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simulate a scenario and write the trajectory CSV");
  simulate->add_option("--scenario", scenario_arg,
                       "Built-in scenario name or config file");
  simulate->add_option("--controls", controls_arg,
                       "Comma-separated schedule, or a file (plain list or "
                       "trajectory CSV)");
  simulate->add_option("--model", model_arg,
                       "Step map: a, b or none (default: a when controls "
                       "are given, none otherwise)");
  simulate->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* solve =
      app.add_subcommand("solve", "Solve for the optimal schedule");
  solve->add_option("--model", model_arg, "a (sweep) or b (direct)")
      ->required();
  solve->add_option("--scenario", scenario_arg,
                    "Built-in scenario name or config file");
  solve->add_option("--out", out_dir, "Output directory")->required();
  solve->add_option("--sweep-relax", options.sweep_relaxation,
                    "Sweep relaxation weight in (0,1]");
  solve->add_option("--sweep-tol", options.sweep_tol,
                    "Sweep relative convergence tolerance");
  solve->add_option("--sweep-max-iter", options.sweep_max_iter,
                    "Sweep iteration cap");
  solve->add_option("--starts", starts_arg,
                    "Comma-separated constant-schedule starts for model b");
  solve->add_option("--kkt-tol", options.kkt_tol,
                    "Projected-gradient stationarity tolerance");

  CLI::App* table = app.add_subcommand(
      "table", "Run the full scenario grid and write the summary table");
  table->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitInputError;
  }

  try {
    std::vector<double> starts;
    if (!starts_arg.empty()) {
      starts = parse_number_list(starts_arg);
      options.starts = starts.data();
      options.n_starts = starts.size();
    }
    if (simulate->parsed())
      return cmd_simulate(scenario_arg, controls_arg, model_arg, out_dir);
    if (solve->parsed())
      return cmd_solve(scenario_arg, model_arg, out_dir, options);
    return cmd_table(out_dir, options);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
}
