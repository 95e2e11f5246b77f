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
#include <set>
#include <string>

#include "json.hpp"

#include "ampshield/metrics.hpp"
#include "ampshield/verify.hpp"

using namespace ampshield;

namespace {

const CheckOutcome* find_check(const VerifyReport& report,
                               const std::string& name) {
  for (const CheckOutcome& c : report.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// The clean suite is deterministic; run it once and share the outcome.
const VerifyReport& fresh_report() {
  static const VerifyReport report = run_verification();
  return report;
}

}  // namespace

TEST_CASE("the registry names every required closed-form check") {
  const std::vector<std::string>& names = check_registry();
  const std::set<std::string> have(names.begin(), names.end());
  // One check per closed-form family the release gate must cover.
  const std::vector<std::string> required = {
      "null-weak-measurement-state",
      "recovery-round-branches",
      "round-branch-probabilities",
      "single-qubit-followup",
      "success-probability-n1",
      "success-probability-n2",
      "success-probability-n3",
      "environment-damping-state",
      "damped-concurrence",
      "recovered-density-matrix",
      "postselect-probability-adjudication",
      "recovered-concurrence",
      "concurrence-crossing-threshold",
      "entanglement-sudden-death-point",
      "robust-preparation",
      "extended-density-matrix",
      "extended-reduction-identity",
      "extended-concurrence-adjudication",
      "damped-fidelity",
      "recovered-fidelity",
      "extended-fidelity-adjudication",
  };
  for (const std::string& name : required) {
    INFO("missing check: " << name);
    CHECK(have.count(name) == 1);
  }
  // No duplicates.
  CHECK(have.size() == names.size());
}

TEST_CASE("a fresh verification run passes every check in registry order") {
  const VerifyReport& report = fresh_report();
  REQUIRE(report.checks.size() == check_registry().size());
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    INFO("check: " << report.checks[i].name << " detail: "
                   << report.checks[i].detail);
    CHECK(report.checks[i].name == check_registry()[i]);
    CHECK(report.checks[i].pass);
    CHECK(report.checks[i].max_deviation <= report.checks[i].tolerance);
  }
  CHECK(report.all_pass());
}

TEST_CASE("adjudication checks name exactly one supported variant") {
  const VerifyReport& report = fresh_report();
  for (const char* name : {"extended-concurrence-adjudication",
                           "extended-fidelity-adjudication",
                           "postselect-probability-adjudication"}) {
    const CheckOutcome* c = find_check(report, name);
    REQUIRE(c != nullptr);
    CHECK(c->pass);
    INFO("detail: " << c->detail);
    CHECK(c->detail.find("deviates by up to") != std::string::npos);
  }
}

TEST_CASE("a corrupted concurrence routine is caught and named") {
  VerifyHooks hooks;
  hooks.mixed_concurrence = [](const DensityMatrix& rho) {
    // Clamp removed and a bias added: a deliberately broken measurement.
    return concurrence_mixed(rho) + 1e-6;
  };
  const VerifyReport report = run_verification(hooks);
  CHECK_FALSE(report.all_pass());
  for (const char* name :
       {"damped-concurrence", "recovered-concurrence",
        "extended-concurrence-adjudication"}) {
    const CheckOutcome* c = find_check(report, name);
    REQUIRE(c != nullptr);
    INFO("check expected to fail: " << name);
    CHECK_FALSE(c->pass);
  }
  // Checks that do not consume the hook still pass: the failure is targeted.
  const CheckOutcome* unrelated = find_check(report, "recovered-fidelity");
  REQUIRE(unrelated != nullptr);
  CHECK(unrelated->pass);
}

TEST_CASE("the human-readable report has one line per check plus a verdict") {
  const VerifyReport& report = fresh_report();
  const std::string text = format_report(report);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(report.checks.size()) + 1);
  CHECK(text.find("RESULT: PASS") != std::string::npos);
  for (const std::string& name : check_registry()) {
    CHECK(text.find(name) != std::string::npos);
  }
}

TEST_CASE("the JSON report parses and mirrors the outcomes") {
  const VerifyReport& report = fresh_report();
  const nlohmann::json doc = nlohmann::json::parse(report_json_text(report));
  CHECK(doc.at("all_pass").get<bool>() == report.all_pass());
  REQUIRE(doc.at("checks").size() == report.checks.size());
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    CHECK(doc["checks"][i].at("name").get<std::string>() ==
          report.checks[i].name);
    CHECK(doc["checks"][i].at("pass").get<bool>() == report.checks[i].pass);
    CHECK(doc["checks"][i].at("max_deviation").get<double>() ==
          doctest::Approx(report.checks[i].max_deviation));
  }
}
