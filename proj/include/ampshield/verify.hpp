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
//
// Release-gating verification: every analytic formula in closed_forms is
// held against the circuit simulator, plus the invariant suites of the
// library modules. Where two candidate transcriptions of a formula exist,
// the corresponding check reports which one the simulation supports and the
// other's deviation.

#ifndef AMPSHIELD_VERIFY_HPP
#define AMPSHIELD_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "ampshield/tensor.hpp"

namespace ampshield {

struct CheckOutcome {
  std::string name;
  std::string detail;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckOutcome> checks;
  bool all_pass() const;
};

// Replaceable measurement routine so tests can inject faults and confirm
// the verification catches them. Empty function = use metrics directly.
struct VerifyHooks {
  std::function<double(const DensityMatrix&)> mixed_concurrence;
};

// Names of every check run_verification performs, in report order.
const std::vector<std::string>& check_registry();

VerifyReport run_verification(const VerifyHooks& hooks = {});

// One line per check: status, name, max deviation, tolerance, detail.
std::string format_report(const VerifyReport& report);
// Same content as a JSON document.
std::string report_json_text(const VerifyReport& report);

}  // namespace ampshield

#endif  // AMPSHIELD_VERIFY_HPP
