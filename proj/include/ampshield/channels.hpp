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

#ifndef AMPSHIELD_CHANNELS_HPP
#define AMPSHIELD_CHANNELS_HPP

#include <string>
#include <utility>
#include <vector>

#include "ampshield/tensor.hpp"

namespace ampshield {

// Amplitude-damping strength. p is the decay probability of the excited
// state; the survival probability q = 1 - p is always derived, never stored.
// The exponential-decay correspondence is sqrt(q) = exp(-gamma*t).
struct DampingParams {
  double p = 0.0;

  DampingParams() = default;
  explicit DampingParams(double decay_probability);

  double q() const { return 1.0 - p; }

  static DampingParams from_survival(double q);
  // gamma_t is the dimensionless product (decay rate x elapsed time).
  static DampingParams from_decay_time(double gamma_t);
  double gamma_t() const;
};

// One measurement outcome: bit string over the measured qubits (in the order
// they were listed), its probability, and the renormalized remaining-register
// state (measured qubits are removed).
struct Branch {
  std::string outcome;
  double probability = 0.0;
  StateVector post_state;
};

// 2x2 real rotation [[cos t, -sin t], [sin t, cos t]].
Operator hadamard_theta(double theta);

// 4x4 CNOT on (control, target): swaps |10> and |11>.
Operator cnot();

// 4x4 unitary on (system qubit, fresh environment qubit):
//   |0>_S|0>_E -> |0>_S|0>_E
//   |1>_S|0>_E -> sqrt(q)|1>_S|0>_E + sqrt(p)|0>_S|1>_E
// The environment-|1> columns are completed unitarily:
//   |0>_S|1>_E -> sqrt(q)|0>_S|1>_E - sqrt(p)|1>_S|0>_E
//   |1>_S|1>_E -> |1>_S|1>_E
// Protocol results never depend on the completion (environments start in
// |0>); that independence is covered by a property test.
Operator damping_couple(const DampingParams& p);

// Null-result weak measurement: applies diag(1, sqrt(q)) to the target and
// renormalizes. Returns (branch probability, post state).
std::pair<double, StateVector> weak_null(const StateVector& state,
                                         const DampingParams& p, int target);

// Exhaustive measurement of the listed qubits. One Branch per outcome with
// probability above the zero-norm threshold, ascending outcome order,
// measured qubits removed from each post state.
std::vector<Branch> measure_branches(const StateVector& state,
                                     const std::vector<int>& targets);

// Projects the listed qubits onto the outcome bit string, removes them and
// renormalizes. Returns (branch probability, post state). Throws
// ImpossibleBranchError when the branch weight is below threshold.
std::pair<double, StateVector> postselect(const StateVector& state,
                                          const std::vector<int>& targets,
                                          const std::string& outcome);

}  // namespace ampshield

#endif  // AMPSHIELD_CHANNELS_HPP
