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

#ifndef AMPSHIELD_METRICS_HPP
#define AMPSHIELD_METRICS_HPP

#include <array>

#include "ampshield/tensor.hpp"

namespace ampshield {

// Concurrence of a normalized two-qubit pure state with amplitudes
// (a, b, g, d): max{0, 2|a*d - b*g|}, clamped to [0, 1].
double concurrence_pure(const StateVector& state);

// Square roots of the eigenvalues of rho * (sy x sy) * conj(rho) * (sy x sy),
// sorted in decreasing order. Computed as the singular values of
// Psi^T (sy x sy) Psi for a factorization rho = Psi Psi^dagger, which shares
// the product's nonzero spectrum but stays accurate to machine precision when
// eigenvalues collide at zero (rank-deficient rho). Eigenvalues of rho below
// -1e-10 are rejected; small negatives are clamped to zero.
std::array<double, 4> wootters_lambdas(const DensityMatrix& rho);

// Wootters concurrence max{0, l1 - l2 - l3 - l4}, clamped to [0, 1].
// Validates the input (Hermitian, unit trace, PSD up to clamp).
double concurrence_mixed(const DensityMatrix& rho);

// Overlap <psi|rho|psi> of a pure initial state with a mixed final state,
// real within 1e-12, clamped to [0, 1].
double fidelity_pure_mixed(const StateVector& initial,
                           const DensityMatrix& final_state);

}  // namespace ampshield

#endif  // AMPSHIELD_METRICS_HPP
