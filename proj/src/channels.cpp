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

#include "ampshield/channels.hpp"

#include <cmath>

namespace ampshield {

DampingParams::DampingParams(double decay_probability) : p(decay_probability) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("DampingParams: p must be in [0, 1]");
  }
}

DampingParams DampingParams::from_survival(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("DampingParams: q must be in [0, 1]");
  }
  return DampingParams(1.0 - q);
}

DampingParams DampingParams::from_decay_time(double gamma_t) {
  if (!(gamma_t >= 0.0)) {
    throw std::invalid_argument(
        "DampingParams: decay-rate-time product must be non-negative");
  }
  // sqrt(q) = exp(-gamma*t), so q = exp(-2*gamma*t).
  return from_survival(std::exp(-2.0 * gamma_t));
}

double DampingParams::gamma_t() const {
  return -0.5 * std::log(q());
}

Operator hadamard_theta(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("hadamard_theta: angle must be finite");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXcd m(2, 2);
  m << c, -s, s, c;
  return Operator(std::move(m), true);
}

Operator cnot() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return Operator(std::move(m), true);
}

Operator damping_couple(const DampingParams& p) {
  const double sq = std::sqrt(p.q());
  const double sp = std::sqrt(p.p);
  // Basis order (system, environment): |00>, |01>, |10>, |11>.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = sq;
  m(2, 1) = -sp;
  m(1, 2) = sp;
  m(2, 2) = sq;
  m(3, 3) = 1.0;
  return Operator(std::move(m), true);
}

std::pair<double, StateVector> weak_null(const StateVector& state,
                                         const DampingParams& p, int target) {
  if (!state.is_normalized()) {
    throw std::invalid_argument("weak_null: state is not normalized");
  }
  Eigen::MatrixXcd k(2, 2);
  k << 1.0, 0.0, 0.0, std::sqrt(p.q());
  const StateVector mapped =
      apply_unitary(state, Operator(std::move(k), false), {target});
  return renormalize(mapped);
}

namespace {

std::string outcome_string(std::size_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t t = 0; t < width; ++t) {
    if ((value >> (width - 1 - t)) & 1u) s[t] = '1';
  }
  return s;
}

// Gathers the amplitudes of the sub-register where `targets` read `outcome`,
// with the remaining qubits (in original order) forming the new register.
std::pair<double, StateVector> project_out(const StateVector& state,
                                           const std::vector<int>& targets,
                                           std::size_t outcome_bits) {
  const int n = state.num_qubits();
  std::vector<int> rest;
  std::vector<QubitRole> rest_roles;
  for (int qb = 0; qb < n; ++qb) {
    bool measured = false;
    for (int t : targets) {
      if (t == qb) measured = true;
    }
    if (!measured) {
      rest.push_back(qb);
      rest_roles.push_back(state.roles[static_cast<std::size_t>(qb)]);
    }
  }
  const std::size_t rd = std::size_t{1} << rest.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rd));
  for (std::size_t r = 0; r < rd; ++r) {
    std::size_t idx = 0;
    for (std::size_t t = 0; t < rest.size(); ++t) {
      idx |= ((r >> (rest.size() - 1 - t)) & 1u) << (n - 1 - rest[t]);
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      idx |= ((outcome_bits >> (targets.size() - 1 - t)) & 1u)
             << (n - 1 - targets[t]);
    }
    out(static_cast<Eigen::Index>(r)) =
        state.amps(static_cast<Eigen::Index>(idx));
  }
  const double prob = out.squaredNorm();
  if (prob < kZeroNormThreshold) {
    return {prob, StateVector()};
  }
  out /= std::sqrt(prob);
  return {prob, StateVector(std::move(out), std::move(rest_roles))};
}

void check_measurement_targets(const StateVector& state,
                               const std::vector<int>& targets,
                               const char* what) {
  if (!state.is_normalized()) {
    throw std::invalid_argument(std::string(what) +
                                ": state is not normalized");
  }
  if (targets.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty target list");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= state.num_qubits()) {
      throw std::invalid_argument(std::string(what) + ": qubit index " +
                                  std::to_string(targets[i]) +
                                  " out of range");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument(std::string(what) +
                                    ": duplicate qubit index");
      }
    }
  }
}

}  // namespace

std::vector<Branch> measure_branches(const StateVector& state,
                                     const std::vector<int>& targets) {
  check_measurement_targets(state, targets, "measure_branches");
  const std::size_t outcomes = std::size_t{1} << targets.size();
  std::vector<Branch> branches;
  for (std::size_t o = 0; o < outcomes; ++o) {
    auto [prob, post] = project_out(state, targets, o);
    if (prob < kZeroNormThreshold) continue;
    branches.push_back(
        Branch{outcome_string(o, targets.size()), prob, std::move(post)});
  }
  return branches;
}

std::pair<double, StateVector> postselect(const StateVector& state,
                                          const std::vector<int>& targets,
                                          const std::string& outcome) {
  check_measurement_targets(state, targets, "postselect");
  if (outcome.size() != targets.size()) {
    throw std::invalid_argument(
        "postselect: outcome length does not match target count");
  }
  std::size_t bits = 0;
  for (char c : outcome) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("postselect: outcome must be over {0,1}");
    }
    bits = (bits << 1) | static_cast<std::size_t>(c == '1');
  }
  auto [prob, post] = project_out(state, targets, bits);
  if (prob < kZeroNormThreshold) {
    throw ImpossibleBranchError("postselect: branch " + outcome +
                                " has zero weight");
  }
  return {prob, std::move(post)};
}

}  // namespace ampshield
