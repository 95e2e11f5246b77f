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

#ifndef AMPSHIELD_PROTOCOLS_HPP
#define AMPSHIELD_PROTOCOLS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ampshield/channels.hpp"
#include "ampshield/tensor.hpp"

namespace ampshield {

// Amplitudes of the two-qubit input a|00> + b|01> + g|10> + d|11>,
// renormalized on construction.
struct TwoQubitCoeffs {
  complex alpha{1.0, 0.0};
  complex beta{0.0, 0.0};
  complex gamma{0.0, 0.0};
  complex delta{0.0, 0.0};

  static TwoQubitCoeffs normalized(complex a, complex b, complex g, complex d);

  bool is_real(double tol = kExactTol) const;
  // Two-qubit state with roles {System, System}.
  StateVector to_state() const;
};

// Preparation strength x = tan^2(theta1) and recovery strength
// y = tan^2(theta2). The extended scheme constrains x*q*y = 1; the basic
// scheme is x = 1. y is always derived, never set independently.
struct SchemeParams {
  DampingParams damping;
  double x = 1.0;
  double y = 1.0;

  static SchemeParams basic(const DampingParams& p);
  static SchemeParams extended(const DampingParams& p, double x);
};

// One node of the measurement branch tree. `probability` is the absolute
// probability of reaching the node from the start of the protocol;
// `success` marks terminal success leaves.
struct BranchLogEntry {
  int round = 0;
  std::string outcome;
  double probability = 0.0;
  bool success = false;
};

struct RecoveryResult {
  double success_probability = 0.0;
  std::variant<StateVector, DensityMatrix> recovered;
  std::vector<BranchLogEntry> branch_log;
  // Worst per-amplitude deviation of any success branch from the input
  // state (global phase quotiented); only meaningful for pure-state schemes.
  double max_recovery_error = 0.0;
  // Failure-branch continuation state for the single-ancilla follow-up.
  std::optional<StateVector> continuation;
};

// Null-result weak measurement on both qubits. Returns the branch
// probability |a|^2 + q(|b|^2+|g|^2) + q^2|d|^2 and the surviving state
// (a, b sqrt(q), g sqrt(q), d q) / N_d.
std::pair<double, StateVector> damp_null(const TwoQubitCoeffs& coeffs,
                                         const DampingParams& p);

// One recovery round: attach one ancilla per System-role qubit (in |0>),
// rotate each ancilla by theta, CNOT from each system qubit to its ancilla,
// measure the ancillas. Branch outcomes are ordered 00, 01, 10, 11 with the
// first bit belonging to the first system qubit.
std::vector<Branch> recovery_round(const StateVector& state, double theta);

// One-qubit recovery procedure: a single ancilla rotated by theta, a CNOT
// from `qubit`, an ancilla measurement. Outcomes "0" and "1"; with
// tan(theta) the inverse of the qubit's excited-amplitude factor, outcome 0
// restores the qubit.
std::vector<Branch> one_qubit_recovery_branches(const StateVector& state,
                                                int qubit, double theta);

// Weak measurement followed by up to `max_rounds` recovery procedures:
// outcome 00 succeeds; 01/10 triggers a single-qubit follow-up on the still
// damped qubit; 11 triggers a full round; each failure doubles the effective
// damping exponent. Every applied procedure counts one round. 1 <= N <= 4.
RecoveryResult recover_iterative(const TwoQubitCoeffs& coeffs,
                                 const DampingParams& p, int max_rounds);

// Couples each system qubit to its own fresh environment qubit. Output
// register order: system 0, system 1, environment 0, environment 1.
StateVector damp_env(const TwoQubitCoeffs& coeffs, const DampingParams& p);
StateVector damp_env(const StateVector& system_state, const DampingParams& p);
// Variant with an injectable coupling operator (used to show protocol
// results do not depend on the unitary completion choice).
StateVector damp_env(const StateVector& system_state,
                     const Operator& coupling);

// Full protection without weak measurement: damp_env, recovery round with
// tan(theta) = 1/sqrt(q), post-select ancillas on 00, trace out the
// environment. recovered holds the final DensityMatrix.
RecoveryResult protect(const TwoQubitCoeffs& coeffs, const DampingParams& p);

// Continues the 01 (or 10) branch of protect with one extra ancilla rotated
// by tan(theta) = 1/q and a CNOT from the still-damped qubit. On ancilla
// outcome 0 the traced system matrix equals protect()'s result; on outcome 1
// the register is returned in `continuation` with the damping exponent
// doubled for further rounds.
RecoveryResult protect_followup(const TwoQubitCoeffs& coeffs,
                                const DampingParams& p,
                                const std::string& first_outcome);

// Preparation stage: recovery circuit on the undamped input with
// theta1 = atan(sqrt(x)), post-selected on 00. Returns the probability
// N1^2/(1+x)^2 and the state (a, b sqrt(x), g sqrt(x), d x) / N1.
std::pair<double, StateVector> prepare_robust(const TwoQubitCoeffs& coeffs,
                                              double x);

// Extended scheme: prepare_robust(x), damping with environment qubits, then
// recovery with theta2 = atan(sqrt(y)), y = 1/(x q), post-select 00, trace
// environment. The resulting density matrix equals protect(coeffs, p*x)'s.
// success_probability is the total over both post-selections.
RecoveryResult extended_protect(const TwoQubitCoeffs& coeffs,
                                const DampingParams& p, double x);

}  // namespace ampshield

#endif  // AMPSHIELD_PROTOCOLS_HPP
