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

#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace augopt {

namespace {

std::string fmt_full(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_fixed(double x, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(key + ": not a number: '" + text + "'");
  }
  if (used != text.size())
    throw ParseError(key + ": trailing characters in '" + text + "'");
  return value;
}

}  // namespace

void ScenarioSpec::validate() const {
  params.validate();
  obj.validate();
  if (x0.u < 0.0 || x0.v < 0.0 || x0.w < 0.0)
    throw ValidationError("x0: populations must be nonnegative");
}

std::vector<ScenarioSpec> builtin_scenarios() {
  ScenarioSpec baseline;
  baseline.name = "baseline";
  baseline.params = ModelParams{};     // defaults are the baseline constants
  baseline.obj = ObjectiveParams{};
  baseline.x0 = State{0.20, 0.50, 0.70};

  ScenarioSpec m2_zero = baseline;
  m2_zero.name = "m2-zero";
  m2_zero.obj.M2 = 0.0;

  ScenarioSpec m2_zero_low_n = m2_zero;
  m2_zero_low_n.name = "m2-zero-n-0.10";
  m2_zero_low_n.obj.N = 0.10;

  ScenarioSpec low_reserve = baseline;
  low_reserve.name = "q-0.70-kw-0.60";
  low_reserve.params.q = 0.70;
  low_reserve.params.k_w = 0.60;

  ScenarioSpec high_decay = baseline;
  high_decay.name = "gamma-0.10";
  high_decay.params.gamma = 0.10;

  return {baseline, m2_zero, m2_zero_low_n, low_reserve, high_decay};
}

ScenarioSpec builtin_scenario(const std::string& name) {
  for (ScenarioSpec& s : builtin_scenarios())
    if (s.name == name) return s;
  throw ValidationError("unknown built-in scenario '" + name + "'");
}

ScenarioSpec load_scenario(const std::string& text) {
  ScenarioSpec spec = builtin_scenario("baseline");

  const std::map<std::string, std::function<void(double)>> setters = {
      {"s", [&](double v) { spec.params.s = v; }},
      {"k_u", [&](double v) { spec.params.k_u = v; }},
      {"m", [&](double v) { spec.params.m = v; }},
      {"delta1", [&](double v) { spec.params.delta1 = v; }},
      {"delta2", [&](double v) { spec.params.delta2 = v; }},
      {"gamma", [&](double v) { spec.params.gamma = v; }},
      {"q", [&](double v) { spec.params.q = v; }},
      {"k_w", [&](double v) { spec.params.k_w = v; }},
      {"n", [&](double v) { spec.params.n = v; }},
      {"M1", [&](double v) { spec.obj.M1 = v; }},
      {"M2", [&](double v) { spec.obj.M2 = v; }},
      {"N", [&](double v) { spec.obj.N = v; }},
      {"A", [&](double v) { spec.obj.A = v; }},
      {"u0", [&](double v) { spec.x0.u = v; }},
      {"v0", [&](double v) { spec.x0.v = v; }},
      {"w0", [&](double v) { spec.x0.w = v; }},
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      spec.name = value;
    } else if (key == "T") {
      const double t = parse_double(key, value);
      if (t != std::floor(t))
        throw ParseError("T: must be an integer, got '" + value + "'");
      spec.obj.T = static_cast<int>(t);
    } else if (auto it = setters.find(key); it != setters.end()) {
      it->second(parse_double(key, value));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
  }
  spec.validate();
  return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  std::ostringstream out;
  out << "name = " << spec.name << "\n";
  out << "T = " << spec.obj.T << "\n";
  const std::pair<const char*, double> keys[] = {
      {"s", spec.params.s},         {"k_u", spec.params.k_u},
      {"m", spec.params.m},         {"delta1", spec.params.delta1},
      {"delta2", spec.params.delta2}, {"gamma", spec.params.gamma},
      {"q", spec.params.q},         {"k_w", spec.params.k_w},
      {"n", spec.params.n},         {"M1", spec.obj.M1},
      {"M2", spec.obj.M2},          {"N", spec.obj.N},
      {"A", spec.obj.A},            {"u0", spec.x0.u},
      {"v0", spec.x0.v},            {"w0", spec.x0.w},
  };
  for (const auto& [key, value] : keys)
    out << key << " = " << fmt_full(value) << "\n";
  return out.str();
}

RunReport run_scenario(const ScenarioSpec& spec, ModelKind model,
                       const SweepConfig& sweep_cfg,
                       const OptimizerConfig& opt_cfg,
                       SolveResult* out_result) {
  spec.validate();
  if (model == ModelKind::Uncontrolled)
    throw ValidationError("model: expected ModelA or ModelB");

  const Trajectory free_run =
      simulate(ModelKind::Uncontrolled, spec.x0, {}, spec.params, spec.obj.T);
  const double j0 = objective(free_run, spec.obj);

  SolveResult result;
  try {
    result = model == ModelKind::ModelA
                 ? solve_fbsm(spec.x0, spec.params, spec.obj, sweep_cfg)
                 : solve_direct(spec.x0, spec.params, spec.obj, opt_cfg);
  } catch (const std::exception& e) {
    throw std::runtime_error("scenario '" + spec.name + "', model " +
                             (model == ModelKind::ModelA ? "A" : "B") + ": " +
                             e.what());
  }

  RunReport report;
  report.scenario = spec.name;
  report.model = model;
  report.j_no_control = j0;
  report.j_optimal = result.objective_value;
  report.percent_increase = static_cast<int>(
      std::lround(100.0 * (result.objective_value / j0 - 1.0)));
  report.controls = result.controls;
  report.converged = result.converged;
  report.iterations = result.iterations;
  if (out_result) *out_result = std::move(result);
  return report;
}

namespace {

std::string percent_cell(const RunReport& r) {
  return fmt_fixed(r.j_optimal, 4) + " (" +
         (r.percent_increase >= 0 ? "+" : "") +
         std::to_string(r.percent_increase) + "%)";
}

}  // namespace

std::string emit_table(const std::vector<RunReport>& reports) {
  // Group by scenario, first appearance order.
  std::vector<std::string> order;
  std::map<std::string, const RunReport*> model_a, model_b;
  for (const RunReport& r : reports) {
    if (model_a.find(r.scenario) == model_a.end() &&
        model_b.find(r.scenario) == model_b.end())
      order.push_back(r.scenario);
    (r.model == ModelKind::ModelA ? model_a : model_b)[r.scenario] = &r;
  }

  std::size_t label_width = std::string("scenario").size();
  for (const std::string& name : order)
    label_width = std::max(label_width, name.size());

  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& j0,
                 const std::string& a, const std::string& b) {
    out << label << std::string(label_width - label.size() + 2, ' ');
    out << j0 << std::string(j0.size() < 8 ? 10 - j0.size() : 2, ' ');
    out << a << std::string(a.size() < 16 ? 18 - a.size() : 2, ' ');
    out << b << "\n";
  };
  row("scenario", "no-aug", "Model A", "Model B");
  for (const std::string& name : order) {
    const RunReport* a = model_a.count(name) ? model_a.at(name) : nullptr;
    const RunReport* b = model_b.count(name) ? model_b.at(name) : nullptr;
    const RunReport* any = a ? a : b;
    row(name, fmt_fixed(any->j_no_control, 4), a ? percent_cell(*a) : "-",
        b ? percent_cell(*b) : "-");
  }
  return out.str();
}

std::string emit_report_csv(const std::vector<RunReport>& reports) {
  std::size_t max_t = 0;
  for (const RunReport& r : reports)
    max_t = std::max(max_t, r.controls.size());
  std::ostringstream out;
  out << "scenario,model,j0,jopt,percent";
  for (std::size_t t = 0; t < max_t; ++t) out << ",h" << t;
  out << "\n";
  for (const RunReport& r : reports) {
    out << r.scenario << ',' << (r.model == ModelKind::ModelA ? 'a' : 'b')
        << ',' << fmt_full(r.j_no_control) << ',' << fmt_full(r.j_optimal)
        << ',' << r.percent_increase;
    for (std::size_t t = 0; t < max_t; ++t) {
      out << ',';
      if (t < r.controls.size()) out << fmt_full(r.controls[t]);
    }
    out << "\n";
  }
  return out.str();
}

void emit_csv(const Trajectory& traj, const AdjointTrajectory* adjoints,
              std::ostream& out) {
  out << "t,u,v,w,h,lambda_u,lambda_v,lambda_w\n";
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    const State& x = traj.states[t];
    out << t << ',' << fmt_full(x.u) << ',' << fmt_full(x.v) << ','
        << fmt_full(x.w) << ',';
    if (t < traj.controls.size()) out << fmt_full(traj.controls[t]);
    out << ',';
    if (adjoints) {
      out << fmt_full(adjoints->lambda_u[t]) << ','
          << fmt_full(adjoints->lambda_v[t]) << ','
          << fmt_full(adjoints->lambda_w[t]);
    } else {
      out << ",,";
    }
    out << "\n";
  }
}

void emit_csv_file(const Trajectory& traj, const AdjointTrajectory* adjoints,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF terminators
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(traj, adjoints, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

ParsedTrajectoryCsv parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("trajectory csv: empty input");
  if (trim(line) != "t,u,v,w,h,lambda_u,lambda_v,lambda_w")
    throw ParseError("trajectory csv: unexpected header '" + trim(line) +
                     "'");

  ParsedTrajectoryCsv parsed;
  std::vector<std::string> h_fields;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(trim(field));
    fields.resize(8);  // trailing empties
    parsed.states.push_back(State{parse_double("u", fields[1]),
                                  parse_double("v", fields[2]),
                                  parse_double("w", fields[3])});
    h_fields.push_back(fields[4]);
  }
  if (parsed.states.empty())
    throw ParseError("trajectory csv: no data rows");
  parsed.x0 = parsed.states.front();
  // The last state row has no control; every earlier row may carry one.
  for (std::size_t t = 0; t + 1 < h_fields.size(); ++t) {
    if (h_fields[t].empty()) {
      if (!parsed.controls.empty())
        throw ParseError("trajectory csv: control column has gaps");
      continue;
    }
    parsed.controls.push_back(parse_double("h", h_fields[t]));
  }
  if (!parsed.controls.empty() &&
      parsed.controls.size() + 1 != parsed.states.size())
    throw ParseError("trajectory csv: control column has gaps");
  return parsed;
}

}  // namespace augopt
