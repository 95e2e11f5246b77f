// Copyright 2026 The Ampshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ampshield/closed_forms.hpp"
#include "ampshield/sweep.hpp"

using namespace ampshield;

namespace {

int column_index(const SweepTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

struct EnvGuard {
  std::string name;
  explicit EnvGuard(const std::string& var) : name(var) {}
  ~EnvGuard() { unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("complex literals parse in re, imi and re+imi forms") {
  CHECK(parse_complex("0.5") == complex(0.5, 0.0));
  CHECK(parse_complex("-0.25i") == complex(0.0, -0.25));
  CHECK(parse_complex("0.5-0.25i") == complex(0.5, -0.25));
  CHECK(parse_complex("1e-3+2e-3i") == complex(1e-3, 2e-3));
  CHECK(parse_complex(" 0.7 ") == complex(0.7, 0.0));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex("1+2"), ConfigError);
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
}

TEST_CASE("p-grid validation and exact endpoints") {
  PGrid grid{0.0, 1.0, 11};
  CHECK_NOTHROW(grid.validate());
  CHECK(grid.at(0) == 0.0);
  CHECK(grid.at(10) == 1.0);
  CHECK(grid.at(5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS((PGrid{-0.1, 1.0, 11}.validate()), ConfigError);
  CHECK_THROWS_AS((PGrid{0.0, 1.2, 11}.validate()), ConfigError);
  CHECK_THROWS_AS((PGrid{0.5, 0.4, 11}.validate()), ConfigError);
  CHECK_THROWS_AS((PGrid{0.0, 1.0, 1}.validate()), ConfigError);
}

TEST_CASE("sweep config parses from JSON with exact field names") {
  const std::string text = R"({
    "scheme": "extended",
    "coeffs": [0.7, 0.35, 0.4, 0.48],
    "p_grid": {"start": 0.0, "stop": 0.9, "steps": 10},
    "x_values": [0.5, 1.0],
    "output_path": "out.csv"
  })";
  const SweepConfig config = parse_sweep_config(text);
  CHECK(config.scheme == Scheme::Extended);
  CHECK(config.p_grid.steps == 10);
  CHECK(config.x_values.size() == 2);
  CHECK(config.output_path == "out.csv");
  // Coefficients are renormalized on load.
  const double norm = std::norm(config.coeffs.alpha) +
                      std::norm(config.coeffs.beta) +
                      std::norm(config.coeffs.gamma) +
                      std::norm(config.coeffs.delta);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sweep config accepts complex coefficient strings") {
  const std::string text = R"({
    "scheme": "weak-recovery",
    "coeffs": ["0.5+0.5i", "0.5", "0.0", "0.5i"],
    "repeats": 2
  })";
  const SweepConfig config = parse_sweep_config(text);
  CHECK(config.repeats == 2);
  CHECK(config.coeffs.alpha.imag() > 0.0);
}

TEST_CASE("sweep config rejects malformed documents") {
  CHECK_THROWS_AS(parse_sweep_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("{}"), ConfigError);  // scheme missing
  CHECK_THROWS_AS(parse_sweep_config(R"({"scheme": "bogus"})"), ConfigError);
  CHECK_THROWS_AS(
      parse_sweep_config(R"({"scheme": "ad-protect", "coeffs": [1, 0]})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_sweep_config(
          R"({"scheme": "ad-protect", "unknown_key": 1})"),
      ConfigError);
  // Non-real coefficients are rejected for the schemes whose closed forms
  // need real inputs.
  CHECK_THROWS_AS(
      []{
        SweepConfig c = parse_sweep_config(
            R"({"scheme": "ad-protect", "coeffs": ["0.5+0.5i", "0.5", "0", "0.5"]})");
        c.validate();
      }(),
      ConfigError);
}

TEST_CASE("ad-protect sweep reproduces the advertised point values") {
  SweepConfig config;
  config.scheme = Scheme::AdProtect;
  config.coeffs = TwoQubitCoeffs::normalized(1, 0, 0, 1);
  config.p_grid = PGrid{0.0, 1.0, 11};
  const SweepTable table = run_sweep(config);
  CHECK(table.rows.size() == 11);
  const int c_rec = column_index(table, "C_recovered_sim");
  const int p_col = column_index(table, "p");
  REQUIRE(c_rec >= 0);
  REQUIRE(p_col >= 0);
  CHECK(table.rows[0][p_col] == 0.0);
  CHECK(table.rows[0][c_rec] == doctest::Approx(1.0).epsilon(1e-12));
  // p = 0.5 row: the exact Bell value 0.5/N2 with N2 = 13/8.
  CHECK(table.rows[5][c_rec] == doctest::Approx(4.0 / 13.0).epsilon(1e-10));
  const int c_closed = column_index(table, "C_recovered_closed");
  REQUIRE(c_closed >= 0);
  for (std::size_t r = 0; r + 1 < table.rows.size(); ++r) {  // skip p = 1
    CHECK(std::abs(table.rows[r][c_rec] - table.rows[r][c_closed]) < 1e-10);
  }
}

TEST_CASE("extended sweep at x = 1 duplicates the ad-protect curve") {
  SweepConfig ext;
  ext.scheme = Scheme::Extended;
  ext.coeffs = figure_family_a();
  ext.p_grid = PGrid{0.0, 0.9, 10};
  ext.x_values = {1.0};
  const SweepTable ext_table = run_sweep(ext);

  SweepConfig basic = ext;
  basic.scheme = Scheme::AdProtect;
  const SweepTable basic_table = run_sweep(basic);

  const int ce = column_index(ext_table, "C_ext_sim");
  const int cb = column_index(basic_table, "C_recovered_sim");
  REQUIRE(ce >= 0);
  REQUIRE(cb >= 0);
  REQUIRE(ext_table.rows.size() == basic_table.rows.size());
  for (std::size_t r = 0; r < ext_table.rows.size(); ++r) {
    CHECK(std::abs(ext_table.rows[r][ce] - basic_table.rows[r][cb]) < 1e-12);
  }
}

TEST_CASE("weak-recovery sweep success column equals the closed form") {
  SweepConfig config;
  config.scheme = Scheme::WeakRecovery;
  config.coeffs = TwoQubitCoeffs::normalized(0.5, 0.5, 0.5, 0.5);
  config.p_grid = PGrid{0.0, 0.9, 10};
  config.repeats = 3;
  const SweepTable table = run_sweep(config);
  const int sim = column_index(table, "success_sim");
  const int closed = column_index(table, "success_closed");
  const int p_col = column_index(table, "p");
  REQUIRE(sim >= 0);
  REQUIRE(closed >= 0);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[sim] - row[closed]) < 1e-12);
    CHECK(row[closed] ==
          doctest::Approx(success_prob_closed(3, 1.0 - row[p_col]))
              .epsilon(1e-13));
  }
}

TEST_CASE("figure tables have the declared shape") {
  for (const std::string& id : figure_ids()) {
    const SweepTable table = figure_table(id);
    CHECK(table.rows.size() == 101);
    for (const auto& row : table.rows) {
      REQUIRE(row.size() == table.columns.size());
    }
  }
  CHECK(figure_table("2").columns ==
        std::vector<std::string>{"p", "P_N1", "P_N2", "P_N3", "q2"});
  CHECK(figure_table("3a").columns ==
        std::vector<std::string>{"p", "C_damped", "C_recovered", "C_ext_x0.8",
                                 "C_ext_x0.5", "C_ext_x0.1"});
  CHECK(figure_table("6b").columns ==
        std::vector<std::string>{"p", "F_damped", "F_recovered", "F_ext_x0.8",
                                 "F_ext_x0.5", "F_ext_x0.1"});
  CHECK_THROWS_AS(figure_table("7"), ConfigError);
}

TEST_CASE("figure point values: undamped endpoints and sudden death") {
  const SweepTable fig2 = figure_table("2");
  CHECK(fig2.rows.front()[0] == 0.0);
  CHECK(fig2.rows.front()[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(fig2.rows.back()[1] == 0.0);  // p = 1: no recovery possible

  const SweepTable fig3a = figure_table("3a");
  const int c_damped = column_index(fig3a, "C_damped");
  // ESD at p ~ 0.8507: the p = 0.84 row is positive, the p = 0.86 row is 0.
  CHECK(fig3a.rows[84][c_damped] > 0.0);
  CHECK(fig3a.rows[86][c_damped] == 0.0);
  CHECK(fig3a.rows[100][c_damped] == 0.0);

  const SweepTable fig6a = figure_table("6a");
  for (std::size_t col = 1; col < fig6a.columns.size(); ++col) {
    CHECK(fig6a.rows.front()[col] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("CSV serialization is deterministic and lossless") {
  const SweepTable table = figure_table("2");
  const std::string a = to_csv(table);
  const std::string b = to_csv(table);
  CHECK(a == b);
  // Header first, then 101 rows.
  CHECK(std::count(a.begin(), a.end(), '\n') == 102);
  CHECK(a.rfind("p,P_N1,P_N2,P_N3,q2\n", 0) == 0);
  // 17 significant digits survive a strtod round-trip bit-for-bit.
  const double reference = table.rows[40][1];
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", reference);
  CHECK(std::strtod(buf, nullptr) == reference);
}

TEST_CASE("sweeps are byte-identical across thread budgets") {
  SweepConfig config;
  config.scheme = Scheme::Extended;
  config.coeffs = figure_family_b();
  config.p_grid = PGrid{0.0, 0.9, 16};
  config.x_values = {0.25, 0.75};
  EnvGuard guard("AMPSHIELD_THREADS");
  setenv("AMPSHIELD_THREADS", "1", 1);
  const std::string serial = to_csv(run_sweep(config));
  setenv("AMPSHIELD_THREADS", "4", 1);
  const std::string parallel = to_csv(run_sweep(config));
  CHECK(serial == parallel);
  CHECK(serial.size() > 1000);
}

TEST_CASE("thread budget reads the environment variable") {
  EnvGuard guard("AMPSHIELD_THREADS");
  setenv("AMPSHIELD_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  setenv("AMPSHIELD_THREADS", "0", 1);
  CHECK(thread_budget() >= 1);
  setenv("AMPSHIELD_THREADS", "banana", 1);
  CHECK_THROWS_AS(thread_budget(), ConfigError);
  unsetenv("AMPSHIELD_THREADS");
  CHECK(thread_budget() >= 1);
}

TEST_CASE("sweep config validation bounds repeats and x values") {
  SweepConfig config;
  config.scheme = Scheme::WeakRecovery;
  config.coeffs = TwoQubitCoeffs::normalized(1, 0, 0, 1);
  config.repeats = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.repeats = 4;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.repeats = 2;
  CHECK_NOTHROW(config.validate());
  config.scheme = Scheme::Extended;
  config.x_values = {};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.x_values = {-0.5};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.x_values = {0.5};
  CHECK_NOTHROW(config.validate());
}
