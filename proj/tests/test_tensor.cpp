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

#include "ampshield/tensor.hpp"
#include "oracle.hpp"

using namespace ampshield;
namespace at = ampshield::testing;

namespace {

Operator pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return Operator{m, true};
}

}  // namespace

TEST_CASE("ground state is |0...0> with the requested roles") {
  const StateVector g = ground_state(
      {QubitRole::System, QubitRole::Ancilla, QubitRole::Environment});
  CHECK(g.num_qubits() == 3);
  CHECK(g.dim() == 8);
  CHECK(g.amps[0] == complex(1.0, 0.0));
  CHECK(g.amps.tail(7).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.roles[1] == QubitRole::Ancilla);
}

TEST_CASE("qubit 0 is the most significant bit of the basis index") {
  // X on qubit 0 of |00> must give |10>, which is index 2, not index 1.
  const StateVector g = ground_state({QubitRole::System, QubitRole::System});
  const StateVector flipped = apply_unitary(g, pauli_x(), {0});
  CHECK(std::abs(flipped.amps[2] - 1.0) < 1e-15);
  const StateVector other = apply_unitary(g, pauli_x(), {1});
  CHECK(std::abs(other.amps[1] - 1.0) < 1e-15);
}

TEST_CASE("apply_unitary matches the scatter-based dense oracle") {
  auto rng = at::make_rng(100);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(trial % 3);  // 2..4 qubits
    const StateVector state = at::random_state(rng, n);
    std::vector<int> targets{static_cast<int>(rng() % n)};
    if (trial % 2 == 0 && n >= 2) {
      int second = static_cast<int>(rng() % n);
      while (second == targets[0]) second = static_cast<int>(rng() % n);
      targets.push_back(second);
    }
    const Operator u = at::random_unitary(rng, 1 << targets.size());
    const StateVector out = apply_unitary(state, u, targets);
    CHECK(at::max_abs_diff_v(
              out.amps, at::naive_apply(state.amps, u.m, targets, n)) < 1e-13);
    CHECK(std::abs(out.norm_sq() - 1.0) < 1e-13);
  }
}

TEST_CASE("apply_unitary respects the listed target order") {
  auto rng = at::make_rng(101);
  const StateVector state = at::random_state(rng, 3);
  const Operator u = at::random_unitary(rng, 4);
  const StateVector a = apply_unitary(state, u, {0, 2});
  const StateVector b = apply_unitary(state, u, {2, 0});
  // Same operator on swapped wires is a genuinely different circuit.
  CHECK(at::max_abs_diff_v(a.amps, b.amps) > 1e-3);
  CHECK(at::max_abs_diff_v(
            b.amps, at::naive_apply(state.amps, u.m, {2, 0}, 3)) < 1e-13);
}

TEST_CASE("apply_unitary rejects bad targets") {
  auto rng = at::make_rng(102);
  const StateVector state = at::random_state(rng, 2);
  const Operator u = at::random_unitary(rng, 4);
  CHECK_THROWS_AS(apply_unitary(state, u, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(state, u, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(state, u, {0}), std::invalid_argument);
}

TEST_CASE("kron composes one-qubit gates in big-endian order") {
  auto rng = at::make_rng(103);
  const StateVector state = at::random_state(rng, 2);
  const Operator a = at::random_unitary(rng, 2);
  const Operator b = at::random_unitary(rng, 2);
  const StateVector split = apply_unitary(apply_unitary(state, a, {0}), b, {1});
  const StateVector joint = apply_unitary(state, kron(a, b), {0, 1});
  CHECK(at::max_abs_diff_v(split.amps, joint.amps) < 1e-13);
}

TEST_CASE("tensor_product concatenates registers and roles") {
  const StateVector a(Eigen::Vector2cd(0.6, 0.8), {QubitRole::System});
  const StateVector b(Eigen::Vector2cd(0.0, 1.0), {QubitRole::Environment});
  const StateVector ab = tensor_product(a, b);
  CHECK(ab.num_qubits() == 2);
  CHECK(ab.roles[0] == QubitRole::System);
  CHECK(ab.roles[1] == QubitRole::Environment);
  CHECK(std::abs(ab.amps[1] - 0.6) < 1e-15);  // |0>|1>
  CHECK(std::abs(ab.amps[3] - 0.8) < 1e-15);  // |1>|1>
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  Eigen::Vector4cd amps;
  amps << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const StateVector bell(amps, {QubitRole::System, QubitRole::System});
  const DensityMatrix reduced = partial_trace(bell, {0});
  CHECK(reduced.dim() == 2);
  CHECK(std::abs(reduced.m(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(reduced.m(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(reduced.m(0, 1)) < 1e-15);
}

TEST_CASE("partial trace output qubit order follows the keep list") {
  auto rng = at::make_rng(104);
  const StateVector state = at::random_state(rng, 3);
  const DensityMatrix direct = partial_trace(state, {2, 0});
  const DensityMatrix swapped = partial_trace(state, {0, 2});
  // Keeping (2,0) is the qubit-swap of keeping (0,2).
  Eigen::Matrix4cd perm = Eigen::Matrix4cd::Zero();
  perm(0, 0) = perm(3, 3) = 1.0;
  perm(1, 2) = perm(2, 1) = 1.0;
  CHECK(at::max_abs_diff(direct.m, perm * swapped.m * perm) < 1e-14);
}

TEST_CASE("partial trace agrees between pure-state and density routes") {
  auto rng = at::make_rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector state = at::random_state(rng, 4);
    const DensityMatrix a = partial_trace(state, {1, 3});
    const DensityMatrix b = partial_trace(pure_to_density(state), {1, 3});
    CHECK(at::max_abs_diff(a.m, b.m) < 1e-13);
    CHECK(std::abs(a.trace_real() - 1.0) < 1e-13);
    CHECK_NOTHROW(validate_density(a, kSpectralTol));
  }
}

TEST_CASE("renormalize reports the squared norm and rejects zero states") {
  Eigen::Vector2cd amps(0.3, 0.0);
  const StateVector small(amps, {QubitRole::System});
  auto [norm_sq, unit] = renormalize(small);
  CHECK(std::abs(norm_sq - 0.09) < 1e-15);
  CHECK(std::abs(unit.amps[0] - 1.0) < 1e-15);
  const StateVector zero(Eigen::Vector2cd(1e-8, 0.0), {QubitRole::System});
  CHECK_THROWS_AS(renormalize(zero), ImpossibleBranchError);
}

TEST_CASE("validate_density rejects broken matrices") {
  Eigen::Matrix2cd bad_trace;
  bad_trace << 0.7, 0.0, 0.0, 0.7;
  CHECK_THROWS_AS(validate_density(DensityMatrix{bad_trace}),
                  std::invalid_argument);
  Eigen::Matrix2cd not_hermitian;
  not_hermitian << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(validate_density(DensityMatrix{not_hermitian}),
                  std::invalid_argument);
  Eigen::Matrix2cd negative;
  negative << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(validate_density(DensityMatrix{negative}),
                  std::invalid_argument);
}

TEST_CASE("global phase is quotiented out by distance_mod_phase") {
  auto rng = at::make_rng(106);
  const StateVector state = at::random_state(rng, 3);
  StateVector rotated = state;
  rotated.amps *= std::polar(1.0, 2.03);
  CHECK(distance_mod_phase(state, rotated) < 1e-14);
  StateVector other = state;
  other.amps[0] += 0.3;
  other.amps.normalize();
  CHECK(distance_mod_phase(state, other) > 1e-3);
}

TEST_CASE("fix_global_phase makes the dominant amplitude real positive") {
  auto rng = at::make_rng(107);
  StateVector state = at::random_state(rng, 2);
  state.amps *= std::polar(1.0, -1.1);
  const StateVector fixed = fix_global_phase(state);
  Eigen::Index biggest = 0;
  state.amps.cwiseAbs().maxCoeff(&biggest);
  CHECK(fixed.amps[biggest].imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fixed.amps[biggest].real() > 0.0);
}
