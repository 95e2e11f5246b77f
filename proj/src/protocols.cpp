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

#include "ampshield/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ampshield {

namespace {

std::vector<int> system_qubits(const StateVector& state) {
  std::vector<int> sys;
  for (int i = 0; i < state.num_qubits(); ++i) {
    if (state.roles[i] == QubitRole::System) sys.push_back(i);
  }
  return sys;
}

StateVector attach_ancillas(const StateVector& state, int count) {
  return tensor_product(
      state, ground_state(std::vector<QubitRole>(count, QubitRole::Ancilla)));
}

// Takes ownership of the branch list so callers can pass the temporary
// returned by a measurement without leaving the result dangling.
Branch take_branch(std::vector<Branch> branches, const std::string& outcome,
                   const std::string& who) {
  for (Branch& b : branches) {
    if (b.outcome == outcome) return std::move(b);
  }
  throw ImpossibleBranchError(who + ": post-selection branch " + outcome +
                              " has zero probability");
}

}  // namespace

TwoQubitCoeffs TwoQubitCoeffs::normalized(complex a, complex b, complex g,
                                          complex d) {
  const double norm = std::sqrt(std::norm(a) + std::norm(b) + std::norm(g) +
                                std::norm(d));
  if (norm < kZeroNormThreshold) {
    throw std::invalid_argument("TwoQubitCoeffs: all coefficients are zero");
  }
  return TwoQubitCoeffs{a / norm, b / norm, g / norm, d / norm};
}

bool TwoQubitCoeffs::is_real(double tol) const {
  return std::abs(alpha.imag()) <= tol && std::abs(beta.imag()) <= tol &&
         std::abs(gamma.imag()) <= tol && std::abs(delta.imag()) <= tol;
}

StateVector TwoQubitCoeffs::to_state() const {
  Eigen::VectorXcd amps(4);
  amps << alpha, beta, gamma, delta;
  return StateVector(amps, {QubitRole::System, QubitRole::System});
}

SchemeParams SchemeParams::basic(const DampingParams& p) {
  return SchemeParams::extended(p, 1.0);
}

SchemeParams SchemeParams::extended(const DampingParams& p, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(
        "SchemeParams: preparation strength x must be positive and finite");
  }
  SchemeParams params{p, x, 0.0};
  const double xq = x * p.q();
  params.y = xq > 0.0 ? 1.0 / xq : std::numeric_limits<double>::infinity();
  return params;
}

std::pair<double, StateVector> damp_null(const TwoQubitCoeffs& coeffs,
                                         const DampingParams& p) {
  auto [prob0, state0] = weak_null(coeffs.to_state(), p, 0);
  auto [prob1, state1] = weak_null(state0, p, 1);
  return {prob0 * prob1, std::move(state1)};
}

std::vector<Branch> recovery_round(const StateVector& state, double theta) {
  const std::vector<int> sys = system_qubits(state);
  if (sys.empty()) {
    throw std::invalid_argument("recovery_round: state has no system qubits");
  }
  const int n = state.num_qubits();
  StateVector ext = attach_ancillas(state, static_cast<int>(sys.size()));
  const Operator rot = hadamard_theta(theta);
  std::vector<int> ancillas;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const int a = n + static_cast<int>(i);
    ext = apply_unitary(ext, rot, {a});
    ancillas.push_back(a);
  }
  const Operator cx = cnot();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    ext = apply_unitary(ext, cx, {sys[i], ancillas[i]});
  }
  return measure_branches(ext, ancillas);
}

std::vector<Branch> one_qubit_recovery_branches(const StateVector& state,
                                                int qubit, double theta) {
  const int n = state.num_qubits();
  StateVector ext = attach_ancillas(state, 1);
  ext = apply_unitary(ext, hadamard_theta(theta), {n});
  ext = apply_unitary(ext, cnot(), {qubit, n});
  return measure_branches(ext, {n});
}

namespace {

// Walks the branch tree of the iterative scheme. `survival` tracks the
// effective single-excitation amplitude factor of the state entering a
// procedure: a full round sees (a, b*sqrt(s), g*sqrt(s), d*s) and doubles the
// exponent on failure; a one-qubit follow-up sees factor s on the damaged
// qubit and squares it on failure.
struct IterativeWalker {
  RecoveryResult& res;
  const StateVector& reference;
  int max_rounds;

  void record_success(const StateVector& leaf, double abs_prob, int round,
                      std::string outcome) {
    res.branch_log.push_back(
        BranchLogEntry{round, std::move(outcome), abs_prob, true});
    res.success_probability += abs_prob;
    res.max_recovery_error =
        std::max(res.max_recovery_error, distance_mod_phase(leaf, reference));
    if (std::holds_alternative<StateVector>(res.recovered) &&
        std::get<StateVector>(res.recovered).num_qubits() == 0) {
      res.recovered = leaf;
    }
  }

  void full_round(const StateVector& state, double abs_prob, double survival,
                  int round) {
    if (round > max_rounds) return;
    const double theta = std::atan2(1.0, std::sqrt(survival));
    for (const Branch& b : recovery_round(state, theta)) {
      const double reach = abs_prob * b.probability;
      if (b.outcome == "00") {
        record_success(b.post_state, reach, round, b.outcome);
      } else if (b.outcome == "11") {
        res.branch_log.push_back(BranchLogEntry{round, b.outcome, reach, false});
        full_round(b.post_state, reach, survival * survival, round + 1);
      } else {
        res.branch_log.push_back(BranchLogEntry{round, b.outcome, reach, false});
        const int damaged = b.outcome == "01" ? 1 : 0;
        one_qubit_round(b.post_state, reach, survival, damaged, round + 1);
      }
    }
  }

  void one_qubit_round(const StateVector& state, double abs_prob,
                       double factor, int qubit, int round) {
    if (round > max_rounds) return;
    const double theta = std::atan2(1.0, factor);
    for (const Branch& b : one_qubit_recovery_branches(state, qubit, theta)) {
      const double reach = abs_prob * b.probability;
      if (b.outcome == "0") {
        record_success(b.post_state, reach, round, b.outcome);
      } else {
        res.branch_log.push_back(BranchLogEntry{round, b.outcome, reach, false});
        one_qubit_round(b.post_state, reach, factor * factor, qubit, round + 1);
      }
    }
  }
};

}  // namespace

RecoveryResult recover_iterative(const TwoQubitCoeffs& coeffs,
                                 const DampingParams& p, int max_rounds) {
  if (max_rounds < 1 || max_rounds > 4) {
    throw std::invalid_argument(
        "recover_iterative: max_rounds must be between 1 and 4");
  }
  RecoveryResult result;
  const StateVector reference = coeffs.to_state();
  auto [null_prob, damped] = damp_null(coeffs, p);
  result.branch_log.push_back(BranchLogEntry{0, "null", null_prob, false});
  IterativeWalker walker{result, reference, max_rounds};
  walker.full_round(damped, null_prob, p.q(), 1);
  return result;
}

StateVector damp_env(const TwoQubitCoeffs& coeffs, const DampingParams& p) {
  return damp_env(coeffs.to_state(), p);
}

StateVector damp_env(const StateVector& system_state, const DampingParams& p) {
  return damp_env(system_state, damping_couple(p));
}

StateVector damp_env(const StateVector& system_state,
                     const Operator& coupling) {
  if (coupling.m.rows() != 4 || coupling.m.cols() != 4) {
    throw std::invalid_argument("damp_env: coupling must act on two qubits");
  }
  if (!coupling.is_unitary(kExactTol)) {
    throw std::invalid_argument("damp_env: coupling must be unitary");
  }
  const std::vector<int> sys = system_qubits(system_state);
  if (sys.empty()) {
    throw std::invalid_argument("damp_env: state has no system qubits");
  }
  const int n = system_state.num_qubits();
  StateVector ext = tensor_product(
      system_state,
      ground_state(std::vector<QubitRole>(sys.size(), QubitRole::Environment)));
  for (std::size_t i = 0; i < sys.size(); ++i) {
    ext = apply_unitary(ext, coupling, {sys[i], n + static_cast<int>(i)});
  }
  return ext;
}

RecoveryResult protect(const TwoQubitCoeffs& coeffs, const DampingParams& p) {
  RecoveryResult result;
  const StateVector damped = damp_env(coeffs, p);
  const double theta = std::atan2(1.0, std::sqrt(p.q()));
  bool found = false;
  for (const Branch& b : recovery_round(damped, theta)) {
    const bool ok = b.outcome == "00";
    result.branch_log.push_back(BranchLogEntry{1, b.outcome, b.probability, ok});
    if (ok) {
      result.success_probability = b.probability;
      result.recovered = partial_trace(b.post_state, {0, 1});
      found = true;
    }
  }
  if (!found) {
    throw ImpossibleBranchError(
        "protect: post-selection branch 00 has zero probability");
  }
  return result;
}

RecoveryResult protect_followup(const TwoQubitCoeffs& coeffs,
                                const DampingParams& p,
                                const std::string& first_outcome) {
  if (first_outcome != "01" && first_outcome != "10") {
    throw std::invalid_argument(
        "protect_followup: first_outcome must be \"01\" or \"10\"");
  }
  RecoveryResult result;
  const StateVector damped = damp_env(coeffs, p);
  const double theta = std::atan2(1.0, std::sqrt(p.q()));
  const Branch first = take_branch(recovery_round(damped, theta),
                                   first_outcome, "protect_followup");
  result.branch_log.push_back(
      BranchLogEntry{1, first_outcome, first.probability, false});
  const int damaged = first_outcome == "01" ? 1 : 0;
  const double theta2 = std::atan2(1.0, p.q());
  for (const Branch& b :
       one_qubit_recovery_branches(first.post_state, damaged, theta2)) {
    const double reach = first.probability * b.probability;
    const bool ok = b.outcome == "0";
    result.branch_log.push_back(BranchLogEntry{2, b.outcome, reach, ok});
    if (ok) {
      result.success_probability = reach;
      result.recovered = partial_trace(b.post_state, {0, 1});
    } else {
      result.continuation = b.post_state;
    }
  }
  return result;
}

std::pair<double, StateVector> prepare_robust(const TwoQubitCoeffs& coeffs,
                                              double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(
        "prepare_robust: x must be positive and finite");
  }
  const double theta1 = std::atan(std::sqrt(x));
  Branch b = take_branch(recovery_round(coeffs.to_state(), theta1), "00",
                         "prepare_robust");
  return {b.probability, std::move(b.post_state)};
}

RecoveryResult extended_protect(const TwoQubitCoeffs& coeffs,
                                const DampingParams& p, double x) {
  RecoveryResult result;
  auto [prep_prob, prepared] = prepare_robust(coeffs, x);
  result.branch_log.push_back(BranchLogEntry{1, "00", prep_prob, false});
  const StateVector damped = damp_env(prepared, p);
  const double theta2 = std::atan2(1.0, std::sqrt(x * p.q()));
  bool found = false;
  for (const Branch& b : recovery_round(damped, theta2)) {
    const double reach = prep_prob * b.probability;
    const bool ok = b.outcome == "00";
    result.branch_log.push_back(BranchLogEntry{2, b.outcome, reach, ok});
    if (ok) {
      result.success_probability = reach;
      result.recovered = partial_trace(b.post_state, {0, 1});
      found = true;
    }
  }
  if (!found) {
    throw ImpossibleBranchError(
        "extended_protect: post-selection branch 00 has zero probability");
  }
  return result;
}

}  // namespace ampshield
