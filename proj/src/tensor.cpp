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

#include "ampshield/tensor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ampshield {

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void check_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) +
                                ": non-finite entry (NaN or Inf)");
  }
}

void check_targets(const std::vector<int>& targets, int num_qubits,
                   const char* what) {
  if (targets.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty qubit list");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      throw std::invalid_argument(std::string(what) + ": qubit index " +
                                  std::to_string(targets[i]) +
                                  " out of range");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument(std::string(what) +
                                    ": duplicate qubit index " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

}  // namespace

StateVector::StateVector() : amps(Eigen::VectorXcd::Ones(1)), roles() {}

StateVector::StateVector(Eigen::VectorXcd amplitudes,
                         std::vector<QubitRole> qubit_roles)
    : amps(std::move(amplitudes)), roles(std::move(qubit_roles)) {
  const auto n = static_cast<std::size_t>(amps.size());
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("StateVector: length must be a power of two");
  }
  if (n != (std::size_t{1} << roles.size())) {
    throw std::invalid_argument(
        "StateVector: amplitude length does not match role count");
  }
  check_finite(amps, "StateVector");
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(std::sqrt(norm_sq()) - 1.0) <= tol;
}

Operator::Operator(Eigen::MatrixXcd matrix, bool is_unitary)
    : m(std::move(matrix)), unitary(is_unitary) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("Operator: matrix must be square");
  }
  if (!is_power_of_two(static_cast<std::size_t>(m.rows()))) {
    throw std::invalid_argument(
        "Operator: dimension must be a power of two");
  }
  check_finite(m, "Operator");
}

bool Operator::is_unitary(double tol) const {
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : m(std::move(matrix)) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  if (!is_power_of_two(static_cast<std::size_t>(m.rows()))) {
    throw std::invalid_argument(
        "DensityMatrix: dimension must be a power of two");
  }
  check_finite(m, "DensityMatrix");
}

int DensityMatrix::num_qubits() const {
  int n = 0;
  for (Eigen::Index d = m.rows(); d > 1; d >>= 1) ++n;
  return n;
}

void validate_density(const DensityMatrix& rho, double tol) {
  const Eigen::MatrixXcd& m = rho.m;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
  }
  if (std::abs(m.trace() - complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      ((m + m.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kSpectralTol) {
    throw std::invalid_argument(
        "DensityMatrix: negative eigenvalue beyond clamp tolerance");
  }
}

Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
    }
  }
  return Operator(std::move(out), a.unitary && b.unitary);
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  Eigen::VectorXcd out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a.amps(i) * b.amps;
  }
  std::vector<QubitRole> roles = a.roles;
  roles.insert(roles.end(), b.roles.begin(), b.roles.end());
  return StateVector(std::move(out), std::move(roles));
}

StateVector ground_state(std::vector<QubitRole> roles) {
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Zero(Eigen::Index{1} << roles.size());
  amps(0) = 1.0;
  return StateVector(std::move(amps), std::move(roles));
}

StateVector apply_unitary(const StateVector& state, const Operator& u,
                          const std::vector<int>& targets) {
  const int n = state.num_qubits();
  check_targets(targets, n, "apply_unitary");
  const int k = static_cast<int>(targets.size());
  const std::size_t sub_dim = std::size_t{1} << k;
  if (static_cast<std::size_t>(u.dim()) != sub_dim) {
    throw std::invalid_argument(
        "apply_unitary: operator dimension does not match target count");
  }
  const std::size_t dim = static_cast<std::size_t>(state.dim());

  // Bit positions of the targets inside the register index.
  std::vector<int> shift(targets.size());
  for (int t = 0; t < k; ++t) shift[t] = n - 1 - targets[t];

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.dim());
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t sub = 0;
    std::size_t rest = i;
    for (int t = 0; t < k; ++t) {
      sub = (sub << 1) | ((i >> shift[t]) & 1u);
      rest &= ~(std::size_t{1} << shift[t]);
    }
    complex acc(0.0, 0.0);
    for (std::size_t s = 0; s < sub_dim; ++s) {
      std::size_t j = rest;
      for (int t = 0; t < k; ++t) {
        j |= ((s >> (k - 1 - t)) & 1u) << shift[t];
      }
      acc += u.m(static_cast<Eigen::Index>(sub),
                 static_cast<Eigen::Index>(s)) *
             state.amps(static_cast<Eigen::Index>(j));
    }
    out(static_cast<Eigen::Index>(i)) = acc;
  }
  return StateVector(std::move(out), state.roles);
}

namespace {

// Builds the full register index from the kept-qubit bits `a` (in keep order)
// and the traced-qubit bits `e` (ascending register order of traced qubits).
std::size_t compose_index(std::size_t a, std::size_t e,
                          const std::vector<int>& keep,
                          const std::vector<int>& rest, int n) {
  std::size_t idx = 0;
  for (std::size_t t = 0; t < keep.size(); ++t) {
    const std::size_t bit = (a >> (keep.size() - 1 - t)) & 1u;
    idx |= bit << (n - 1 - keep[t]);
  }
  for (std::size_t t = 0; t < rest.size(); ++t) {
    const std::size_t bit = (e >> (rest.size() - 1 - t)) & 1u;
    idx |= bit << (n - 1 - rest[t]);
  }
  return idx;
}

std::vector<int> complement(const std::vector<int>& keep, int n) {
  std::vector<int> rest;
  for (int qb = 0; qb < n; ++qb) {
    if (std::find(keep.begin(), keep.end(), qb) == keep.end()) {
      rest.push_back(qb);
    }
  }
  return rest;
}

}  // namespace

DensityMatrix partial_trace(const StateVector& state,
                            const std::vector<int>& keep) {
  const int n = state.num_qubits();
  check_targets(keep, n, "partial_trace");
  const std::vector<int> rest = complement(keep, n);
  const std::size_t kd = std::size_t{1} << keep.size();
  const std::size_t rd = std::size_t{1} << rest.size();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      complex acc(0.0, 0.0);
      for (std::size_t e = 0; e < rd; ++e) {
        const std::size_t ia = compose_index(a, e, keep, rest, n);
        const std::size_t ib = compose_index(b, e, keep, rest, n);
        acc += state.amps(static_cast<Eigen::Index>(ia)) *
               std::conj(state.amps(static_cast<Eigen::Index>(ib)));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  check_targets(keep, n, "partial_trace");
  const std::vector<int> rest = complement(keep, n);
  const std::size_t kd = std::size_t{1} << keep.size();
  const std::size_t rd = std::size_t{1} << rest.size();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      complex acc(0.0, 0.0);
      for (std::size_t e = 0; e < rd; ++e) {
        const std::size_t ia = compose_index(a, e, keep, rest, n);
        const std::size_t ib = compose_index(b, e, keep, rest, n);
        acc += rho.m(static_cast<Eigen::Index>(ia),
                     static_cast<Eigen::Index>(ib));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

std::pair<double, StateVector> renormalize(const StateVector& state) {
  const double nsq = state.norm_sq();
  if (nsq < kZeroNormThreshold) {
    throw ImpossibleBranchError(
        "renormalize: squared norm below zero-norm threshold");
  }
  StateVector out(state.amps / std::sqrt(nsq), state.roles);
  return {nsq, std::move(out)};
}

DensityMatrix pure_to_density(const StateVector& state) {
  if (!state.is_normalized()) {
    throw std::invalid_argument("pure_to_density: state is not normalized");
  }
  return DensityMatrix((state.amps * state.amps.adjoint()).eval());
}

StateVector fix_global_phase(const StateVector& state) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const double mag = std::abs(state.amps(i));
    if (mag > best + kZeroNormThreshold) {
      best = mag;
      pivot = i;
    }
  }
  if (best <= 0.0) return state;
  const complex a = state.amps(pivot);
  const complex phase = std::conj(a) / std::abs(a);
  return StateVector((state.amps * phase).eval(), state.roles);
}

double distance_mod_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("distance_mod_phase: dimension mismatch");
  }
  const StateVector fa = fix_global_phase(a);
  const StateVector fb = fix_global_phase(b);
  return (fa.amps - fb.amps).cwiseAbs().maxCoeff();
}

}  // namespace ampshield
