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

#include <cmath>

#include "ampshield/channels.hpp"
#include "oracle.hpp"

using namespace ampshield;
namespace at = ampshield::testing;

TEST_CASE("damping parameters round-trip between p, q and gamma*t") {
  const DampingParams p(0.19);
  CHECK(p.q() == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(DampingParams::from_survival(0.81).p ==
        doctest::Approx(0.19).epsilon(1e-15));
  // sqrt(q) = exp(-gamma t)  =>  gamma t = -log(q)/2.
  const DampingParams from_time = DampingParams::from_decay_time(p.gamma_t());
  CHECK(from_time.p == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(DampingParams::from_decay_time(0.0).p == 0.0);
  CHECK_THROWS_AS(DampingParams(1.5), std::invalid_argument);
  CHECK_THROWS_AS(DampingParams(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(DampingParams::from_survival(2.0), std::invalid_argument);
}

TEST_CASE("rotation gate entries at frozen recovery angles") {
  // tan(theta) = 1/sqrt(q). q = 1/4: cos = 1/sqrt(5), sin = 2/sqrt(5).
  {
    const Operator h = hadamard_theta(std::atan2(1.0, std::sqrt(0.25)));
    CHECK(h.m(0, 0).real() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(h.m(1, 0).real() == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-14));
  }
  // q = 1/2: cos = 1/sqrt(3), sin = sqrt(2/3).
  {
    const Operator h = hadamard_theta(std::atan2(1.0, std::sqrt(0.5)));
    CHECK(h.m(0, 0).real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(h.m(1, 0).real() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  }
  const Operator h = hadamard_theta(0.77);
  CHECK(h.is_unitary(1e-14));
  CHECK(h.m(0, 1).real() == doctest::Approx(-std::sin(0.77)).epsilon(1e-14));
}

TEST_CASE("cnot swaps |10> and |11> and fixes the rest") {
  const Operator cx = cnot();
  CHECK(cx.is_unitary(1e-15));
  CHECK(cx.m(0, 0) == complex(1.0, 0.0));
  CHECK(cx.m(1, 1) == complex(1.0, 0.0));
  CHECK(cx.m(3, 2) == complex(1.0, 0.0));
  CHECK(cx.m(2, 3) == complex(1.0, 0.0));
  CHECK(std::abs(cx.m(2, 2)) == 0.0);
}

TEST_CASE("damping coupling implements the excited-state decay") {
  const DampingParams p(0.19);
  const Operator dc = damping_couple(p);
  CHECK(dc.is_unitary(1e-14));
  // |10> (system excited, environment ground) is column index 2.
  CHECK(dc.m(2, 2).real() == doctest::Approx(0.9).epsilon(1e-14));       // sqrt(q)
  CHECK(dc.m(1, 2).real() ==
        doctest::Approx(std::sqrt(0.19)).epsilon(1e-14));                // sqrt(p)
  CHECK(std::abs(dc.m(0, 2)) == 0.0);
  CHECK(std::abs(dc.m(3, 2)) == 0.0);
  // Ground system is untouched.
  CHECK(dc.m(0, 0).real() == doctest::Approx(1.0));
  // Full decay swaps the excitation into the environment.
  const Operator full = damping_couple(DampingParams(1.0));
  CHECK(std::abs(full.m(1, 2)) == doctest::Approx(1.0));
  CHECK(std::abs(full.m(2, 2)) == doctest::Approx(0.0));
}

TEST_CASE("null weak measurement rescales the excited amplitude by sqrt(q)") {
  Eigen::Vector2cd amps(0.6, 0.8);
  const StateVector state(amps, {QubitRole::System});
  const DampingParams p(0.36);
  auto [prob, post] = weak_null(state, p, 0);
  // 0.36 + 0.64*0.64 = 0.7696
  CHECK(prob == doctest::Approx(0.36 + 0.64 * 0.64).epsilon(1e-15));
  const double scale = std::sqrt(prob);
  CHECK(post.amps[0].real() == doctest::Approx(0.6 / scale).epsilon(1e-14));
  CHECK(post.amps[1].real() ==
        doctest::Approx(0.8 * 0.8 / scale).epsilon(1e-14));
  // Pure excited state survives with probability exactly q.
  const StateVector excited(Eigen::Vector2cd(0.0, 1.0), {QubitRole::System});
  auto [prob1, post1] = weak_null(excited, p, 0);
  CHECK(prob1 == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(std::abs(post1.amps[1] - 1.0) < 1e-14);
}

TEST_CASE("measure_branches enumerates outcomes in ascending order") {
  auto rng = at::make_rng(200);
  const StateVector state = at::random_state(rng, 3);
  const std::vector<Branch> branches = measure_branches(state, {2, 0});
  REQUIRE(branches.size() == 4);
  CHECK(branches[0].outcome == "00");
  CHECK(branches[1].outcome == "01");
  CHECK(branches[2].outcome == "10");
  CHECK(branches[3].outcome == "11");
  double total = 0.0;
  for (const Branch& b : branches) {
    total += b.probability;
    CHECK(b.post_state.num_qubits() == 1);  // measured qubits removed
    CHECK(b.post_state.norm_sq() == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("measure_branches drops impossible outcomes") {
  // Bell state: measuring both qubits can only give 00 or 11.
  Eigen::Vector4cd amps;
  amps << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const StateVector bell(amps, {QubitRole::System, QubitRole::System});
  const std::vector<Branch> branches = measure_branches(bell, {0, 1});
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].outcome == "00");
  CHECK(branches[1].outcome == "11");
  CHECK(branches[0].probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(branches[0].post_state.num_qubits() == 0);
}

TEST_CASE("measuring one half of a Bell pair collapses the other") {
  Eigen::Vector4cd amps;
  amps << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const StateVector bell(amps, {QubitRole::System, QubitRole::System});
  const std::vector<Branch> branches = measure_branches(bell, {0});
  REQUIRE(branches.size() == 2);
  CHECK(std::abs(branches[0].post_state.amps[0] - 1.0) < 1e-14);  // |0>
  CHECK(std::abs(branches[1].post_state.amps[1] - 1.0) < 1e-14);  // |1>
}

TEST_CASE("postselect matches the corresponding measurement branch") {
  auto rng = at::make_rng(201);
  const StateVector state = at::random_state(rng, 3);
  const std::vector<Branch> branches = measure_branches(state, {1});
  auto [prob, post] = postselect(state, {1}, "1");
  CHECK(prob == doctest::Approx(branches[1].probability).epsilon(1e-14));
  CHECK(at::max_abs_diff_v(post.amps, branches[1].post_state.amps) < 1e-14);
  CHECK_THROWS_AS(postselect(state, {1}, "2"), std::invalid_argument);
}

TEST_CASE("postselect throws on an impossible branch") {
  const StateVector g = ground_state({QubitRole::System, QubitRole::System});
  CHECK_THROWS_AS(postselect(g, {0}, "1"), ImpossibleBranchError);
}
