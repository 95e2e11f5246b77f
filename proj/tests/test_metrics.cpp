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

#include "ampshield/metrics.hpp"
#include "ampshield/protocols.hpp"
#include "oracle.hpp"

using namespace ampshield;
namespace at = ampshield::testing;

namespace {

StateVector bell_state() {
  Eigen::Vector4cd amps;
  amps << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  return StateVector(amps, {QubitRole::System, QubitRole::System});
}

DensityMatrix werner(double weight) {
  const DensityMatrix bell = pure_to_density(bell_state());
  return DensityMatrix{weight * bell.m +
                       (1.0 - weight) * 0.25 *
                           Eigen::Matrix4cd::Identity()};
}

}  // namespace

TEST_CASE("pure concurrence is 2|ad - bg|") {
  CHECK(concurrence_pure(bell_state()) == doctest::Approx(1.0).epsilon(1e-14));
  const TwoQubitCoeffs c = TwoQubitCoeffs::normalized(0.6, 0.0, 0.0, 0.8);
  CHECK(concurrence_pure(c.to_state()) ==
        doctest::Approx(2.0 * 0.6 * 0.8).epsilon(1e-14));
  // Product state: zero.
  const TwoQubitCoeffs product = TwoQubitCoeffs::normalized(0.5, 0.5, 0.5, 0.5);
  CHECK(concurrence_pure(product.to_state()) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("mixed concurrence agrees with the pure formula on pure states") {
  auto rng = at::make_rng(300);
  for (int trial = 0; trial < 30; ++trial) {
    const StateVector state = at::random_state(rng, 2);
    CHECK(std::abs(concurrence_mixed(pure_to_density(state)) -
                   concurrence_pure(state)) < 1e-10);
  }
}

TEST_CASE("Werner-type mixture has the known concurrence max{0,(3w-1)/2}") {
  for (double w : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3.0 * w - 1.0) / 2.0);
    CHECK(concurrence_mixed(werner(w)) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("wootters lambdas are sorted, non-negative, quadratically normed") {
  auto rng = at::make_rng(301);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = at::random_density(rng, 2, 3);
    const auto lambdas = wootters_lambdas(rho);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      CHECK(lambdas[i] >= 0.0);
      if (i > 0) CHECK(lambdas[i] <= lambdas[i - 1] + 1e-12);
      sum_sq += lambdas[i] * lambdas[i];
    }
    // Sum of squared lambdas equals Tr[rho * flip(rho)], which is at most 1.
    CHECK(sum_sq <= 1.0 + 1e-9);
  }
}

TEST_CASE("concurrence is invariant under local unitaries") {
  auto rng = at::make_rng(302);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = at::random_density(rng, 2, 3);
    const Operator local =
        kron(at::random_unitary(rng, 2), at::random_unitary(rng, 2));
    const DensityMatrix rotated{local.m * rho.m * local.m.adjoint()};
    CHECK(std::abs(concurrence_mixed(rotated) - concurrence_mixed(rho)) <
          1e-9);
  }
}

TEST_CASE("fidelity of a pure state with itself is 1; with noise it drops") {
  auto rng = at::make_rng(303);
  const StateVector state = at::random_state(rng, 2);
  CHECK(fidelity_pure_mixed(state, pure_to_density(state)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // Against the maximally mixed state the overlap is exactly 1/4.
  const DensityMatrix mixed{0.25 * Eigen::Matrix4cd::Identity()};
  CHECK(fidelity_pure_mixed(state, mixed) ==
        doctest::Approx(0.25).epsilon(1e-13));
  const double f = fidelity_pure_mixed(state, at::random_density(rng, 2, 3));
  CHECK(f >= 0.0);
  CHECK(f <= 1.0);
}

TEST_CASE("metric functions reject wrong-sized inputs") {
  const StateVector one_qubit(Eigen::Vector2cd(1.0, 0.0), {QubitRole::System});
  CHECK_THROWS_AS(concurrence_pure(one_qubit), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_mixed(DensityMatrix{Eigen::Matrix2cd::Identity()}),
                  std::invalid_argument);
}
