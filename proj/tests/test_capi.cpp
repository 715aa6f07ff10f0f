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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "augopt/augopt.h"
#include "doctest.h"

TEST_CASE("built-in names enumerate exactly five scenarios") {
  size_t count = 0;
  while (augopt_builtin_name(count)) ++count;
  CHECK(count == 5);
  CHECK(std::string(augopt_builtin_name(0)) == "baseline");
  CHECK(augopt_builtin_name(99) == nullptr);
}

TEST_CASE("scenario handles expose name, horizon and the no-control J") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("baseline", &sc) == AUGOPT_OK);
  CHECK(std::string(augopt_scenario_name(sc)) == "baseline");
  CHECK(augopt_scenario_horizon(sc) == 6);
  double j0 = 0.0;
  CHECK(augopt_scenario_no_control_objective(sc, &j0) == AUGOPT_OK);
  CHECK(j0 == doctest::Approx(0.441294359409955).epsilon(1e-12));
  augopt_scenario_free(sc);
}

TEST_CASE("text round trip through the C surface") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("gamma-0.10", &sc) == AUGOPT_OK);
  char* text = nullptr;
  REQUIRE(augopt_scenario_to_text(sc, &text) == AUGOPT_OK);
  REQUIRE(text != nullptr);

  augopt_scenario* back = nullptr;
  REQUIRE(augopt_scenario_from_text(text, &back) == AUGOPT_OK);
  CHECK(std::string(augopt_scenario_name(back)) == "gamma-0.10");
  double a = 0.0, b = 0.0;
  augopt_scenario_no_control_objective(sc, &a);
  augopt_scenario_no_control_objective(back, &b);
  CHECK(a == b);

  augopt_string_free(text);
  augopt_scenario_free(back);
  augopt_scenario_free(sc);
}

TEST_CASE("parse and argument failures set the thread error string") {
  augopt_scenario* sc = nullptr;
  CHECK(augopt_scenario_from_text("wat = 1\n", &sc) == AUGOPT_ERR_PARSE);
  CHECK(sc == nullptr);
  CHECK(std::strlen(augopt_last_error()) > 0);

  CHECK(augopt_scenario_builtin("missing", &sc) != AUGOPT_OK);
  CHECK(augopt_scenario_builtin(nullptr, &sc) ==
        AUGOPT_ERR_INVALID_ARGUMENT);
  CHECK(augopt_scenario_from_file("/no/such/file.cfg", &sc) ==
        AUGOPT_ERR_IO);

  CHECK(augopt_scenario_from_text("gamma = 1.5\n", &sc) ==
        AUGOPT_ERR_VALIDATION);
}

TEST_CASE("simulation through the C surface") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("baseline", &sc) == AUGOPT_OK);

  augopt_result* r = nullptr;
  REQUIRE(augopt_simulate(sc, AUGOPT_MODEL_UNCONTROLLED, nullptr, 0, &r) ==
          AUGOPT_OK);
  CHECK(augopt_result_horizon(r) == 6);
  CHECK(augopt_result_num_controls(r) == 0);
  CHECK(augopt_result_has_adjoints(r) == 0);
  CHECK(augopt_result_objective(r) ==
        doctest::Approx(0.441294359409955).epsilon(1e-12));

  double x[3] = {0, 0, 0};
  REQUIRE(augopt_result_state(r, 0, x) == AUGOPT_OK);
  CHECK(x[0] == 0.2);
  CHECK(x[1] == 0.5);
  CHECK(x[2] == 0.7);
  CHECK(augopt_result_state(r, 7, x) == AUGOPT_ERR_INVALID_ARGUMENT);
  CHECK(augopt_result_state(r, -1, x) == AUGOPT_ERR_INVALID_ARGUMENT);
  augopt_result_free(r);

  const double h[6] = {0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
  REQUIRE(augopt_simulate(sc, AUGOPT_MODEL_B, h, 6, &r) == AUGOPT_OK);
  CHECK(augopt_result_objective(r) ==
        doctest::Approx(0.401436548488119).epsilon(1e-12));
  augopt_result_free(r);

  CHECK(augopt_simulate(sc, AUGOPT_MODEL_A, h, 4, &r) ==
        AUGOPT_ERR_LENGTH_MISMATCH);
  augopt_scenario_free(sc);
}

TEST_CASE("an infeasible simulation still yields an inspectable result") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_from_text("v0 = 3.0\n", &sc) == AUGOPT_OK);
  augopt_result* r = nullptr;
  CHECK(augopt_simulate(sc, AUGOPT_MODEL_UNCONTROLLED, nullptr, 0, &r) ==
        AUGOPT_ERR_INFEASIBLE_REGIME);
  REQUIRE(r != nullptr);
  double x[3];
  REQUIRE(augopt_result_state(r, 1, x) == AUGOPT_OK);
  CHECK(x[0] < 0.0);
  augopt_result_free(r);
  augopt_scenario_free(sc);
}

TEST_CASE("solving model B through the C surface") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("baseline", &sc) == AUGOPT_OK);
  augopt_result* r = nullptr;
  REQUIRE(augopt_solve(sc, AUGOPT_MODEL_B, nullptr, &r) == AUGOPT_OK);
  CHECK(augopt_result_converged(r) == 1);
  REQUIRE(augopt_result_num_controls(r) == 6);
  double h[6];
  REQUIRE(augopt_result_controls(r, h) == AUGOPT_OK);
  for (double v : h) {
    CHECK(v >= 0.0);
    CHECK(v <= 0.7);
  }
  CHECK(augopt_result_objective(r) > 0.44);
  augopt_result_free(r);
  augopt_scenario_free(sc);
}

TEST_CASE("solving model A exposes the adjoints and the CSV writer") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("baseline", &sc) == AUGOPT_OK);
  augopt_result* r = nullptr;
  REQUIRE(augopt_solve(sc, AUGOPT_MODEL_A, nullptr, &r) == AUGOPT_OK);
  CHECK(augopt_result_has_adjoints(r) == 1);
  double lam[3];
  REQUIRE(augopt_result_adjoint(r, 6, lam) == AUGOPT_OK);
  CHECK(lam[0] == 1.0);
  CHECK(lam[1] == 0.0);
  CHECK(lam[2] == 0.5);

  const auto path =
      std::filesystem::temp_directory_path() / "augopt_capi_test.csv";
  REQUIRE(augopt_result_write_csv(r, path.string().c_str()) == AUGOPT_OK);
  std::ifstream in(path);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "t,u,v,w,h,lambda_u,lambda_v,lambda_w");
  std::filesystem::remove(path);

  augopt_result_free(r);
  augopt_scenario_free(sc);
}

TEST_CASE("solver options are honored and misuse is rejected") {
  augopt_scenario* sc = nullptr;
  REQUIRE(augopt_scenario_builtin("baseline", &sc) == AUGOPT_OK);

  augopt_solver_options opt = {};
  opt.sweep_relaxation = 1.0;  // oscillates: must report non-convergence
  opt.sweep_max_iter = 40;
  augopt_result* r = nullptr;
  CHECK(augopt_solve(sc, AUGOPT_MODEL_A, &opt, &r) ==
        AUGOPT_ERR_NOT_CONVERGED);
  REQUIRE(r != nullptr);
  CHECK(augopt_result_converged(r) == 0);
  augopt_result_free(r);

  CHECK(augopt_solve(sc, AUGOPT_MODEL_UNCONTROLLED, nullptr, &r) ==
        AUGOPT_ERR_INVALID_ARGUMENT);
  CHECK(augopt_solve(nullptr, AUGOPT_MODEL_A, nullptr, &r) ==
        AUGOPT_ERR_INVALID_ARGUMENT);
  augopt_scenario_free(sc);
}

TEST_CASE("the full table runs through the C surface") {
  char* table = nullptr;
  char* csv = nullptr;
  REQUIRE(augopt_run_table(nullptr, &table, &csv) == AUGOPT_OK);
  REQUIRE(table != nullptr);
  REQUIRE(csv != nullptr);
  CHECK(std::string(table).find("baseline") != std::string::npos);
  CHECK(std::string(csv).rfind("scenario,model,", 0) == 0);
  augopt_string_free(table);
  augopt_string_free(csv);
}
