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

#ifndef AMPSHIELD_TENSOR_HPP
#define AMPSHIELD_TENSOR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ampshield {

using complex = std::complex<double>;

// Tolerance for identities that involve only sums/products of amplitudes.
inline constexpr double kExactTol = 1e-12;
// Tolerance for quantities that pass through an eigensolver.
inline constexpr double kSpectralTol = 1e-10;
// A post-selection branch whose squared norm falls below this is impossible.
inline constexpr double kZeroNormThreshold = 1e-14;

// Thrown when a post-selected branch has (numerically) zero weight.
class ImpossibleBranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QubitRole { System, Ancilla, Environment };

// Dense state vector over n qubits, big-endian: qubit 0 is the most
// significant bit of the basis index, so |01> on qubits (0,1) is index 1.
struct StateVector {
  Eigen::VectorXcd amps;
  std::vector<QubitRole> roles;

  StateVector();
  StateVector(Eigen::VectorXcd amplitudes, std::vector<QubitRole> qubit_roles);

  int num_qubits() const { return static_cast<int>(roles.size()); }
  Eigen::Index dim() const { return amps.size(); }
  double norm_sq() const { return amps.squaredNorm(); }
  bool is_normalized(double tol = kExactTol) const;
};

// Square complex matrix, power-of-two dimension. The unitary flag is a
// promise made by constructors of gate factories; is_unitary() checks it.
struct Operator {
  Eigen::MatrixXcd m;
  bool unitary = false;

  Operator() = default;
  Operator(Eigen::MatrixXcd matrix, bool is_unitary);

  Eigen::Index dim() const { return m.rows(); }
  bool is_unitary(double tol = kExactTol) const;
};

struct DensityMatrix {
  Eigen::MatrixXcd m;

  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  Eigen::Index dim() const { return m.rows(); }
  int num_qubits() const;
  double trace_real() const { return m.trace().real(); }
};

// Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues above
// -1e-10. Throws std::invalid_argument naming the violated property.
void validate_density(const DensityMatrix& rho, double tol = kExactTol);

// Bit of qubit `qubit` inside basis index `index` of an n-qubit register.
inline int qubit_bit(std::size_t index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
}

Operator kron(const Operator& a, const Operator& b);

StateVector tensor_product(const StateVector& a, const StateVector& b);

// |0...0> on `roles.size()` qubits with the given role labels.
StateVector ground_state(std::vector<QubitRole> roles);

// Embeds `u` on the listed qubits (targets[0] = most significant bit of the
// operator's own index space) and identity elsewhere. `u` need not be
// unitary; norm is preserved only when it is.
StateVector apply_unitary(const StateVector& state, const Operator& u,
                          const std::vector<int>& targets);

// Reduced density matrix over `keep` (output qubit order = keep order).
DensityMatrix partial_trace(const StateVector& state,
                            const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// Returns (squared norm of input, unit-norm copy). Throws
// ImpossibleBranchError when the squared norm is below 1e-14.
std::pair<double, StateVector> renormalize(const StateVector& state);

DensityMatrix pure_to_density(const StateVector& state);

// Multiplies by the global phase that makes the largest-magnitude amplitude
// real and positive (first such index on ties).
StateVector fix_global_phase(const StateVector& state);

// Max per-amplitude distance after quotienting the global phase.
double distance_mod_phase(const StateVector& a, const StateVector& b);

}  // namespace ampshield

#endif  // AMPSHIELD_TENSOR_HPP
