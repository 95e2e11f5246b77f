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

#include "ampshield/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ampshield {

namespace {

constexpr double kNegClamp = -1e-10;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// sigma_y x sigma_y is real: antidiagonal (-1, 1, 1, -1).
Eigen::Matrix4cd spin_flip_kernel() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

}  // namespace

double concurrence_pure(const StateVector& state) {
  if (state.num_qubits() != 2) {
    throw std::invalid_argument("concurrence_pure: expects a two-qubit state");
  }
  if (!state.is_normalized()) {
    throw std::invalid_argument("concurrence_pure: state is not normalized");
  }
  const complex cross =
      state.amps(0) * state.amps(3) - state.amps(1) * state.amps(2);
  return clamp01(2.0 * std::abs(cross));
}

std::array<double, 4> wootters_lambdas(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("wootters_lambdas: expects a 4x4 matrix");
  }
  validate_density(rho);
  // Factor rho = Psi Psi^dagger. The nonzero spectrum of
  // rho (sy x sy) conj(rho) (sy x sy) equals that of C^dagger C with
  // C = Psi^T (sy x sy) Psi, so the lambdas are the singular values of C.
  // Unlike a direct eigensolve of the non-Hermitian product, the SVD keeps
  // full precision when the product is defective (pure or low-rank rho),
  // where square-rooting eigenvalues loses half the significant digits.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("wootters_lambdas: eigensolver failed");
  }
  Eigen::Matrix4cd psi = es.eigenvectors();
  for (int i = 0; i < 4; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev < 0.0) {
      if (ev < kNegClamp) {
        throw std::runtime_error(
            "wootters_lambdas: negative eigenvalue beyond clamp tolerance");
      }
      ev = 0.0;
    }
    psi.col(i) *= std::sqrt(ev);
  }
  const Eigen::Matrix4cd c = psi.transpose() * spin_flip_kernel() * psi;
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(c);
  std::array<double, 4> lambdas{};
  for (int i = 0; i < 4; ++i) {
    lambdas[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  return lambdas;
}

double concurrence_mixed(const DensityMatrix& rho) {
  const std::array<double, 4> l = wootters_lambdas(rho);
  return clamp01(l[0] - l[1] - l[2] - l[3]);
}

double fidelity_pure_mixed(const StateVector& initial,
                           const DensityMatrix& final_state) {
  if (initial.dim() != final_state.dim()) {
    throw std::invalid_argument("fidelity_pure_mixed: dimension mismatch");
  }
  if (!initial.is_normalized()) {
    throw std::invalid_argument(
        "fidelity_pure_mixed: initial state is not normalized");
  }
  const complex overlap =
      (initial.amps.adjoint() * final_state.m * initial.amps)(0, 0);
  if (std::abs(overlap.imag()) > kExactTol) {
    throw std::runtime_error(
        "fidelity_pure_mixed: overlap has a non-real component");
  }
  return clamp01(overlap.real());
}

}  // namespace ampshield
