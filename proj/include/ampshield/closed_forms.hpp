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
//
// Analytic counterparts of every protocol quantity. Each function here is a
// pure formula; the verification layer holds them against the circuit
// simulator. Where two candidate transcriptions of a formula circulate, both
// are provided (`..._variant` is the alternative) and the verification
// report marks which one the simulator supports.

#ifndef AMPSHIELD_CLOSED_FORMS_HPP
#define AMPSHIELD_CLOSED_FORMS_HPP

#include <array>
#include <optional>

#include "ampshield/protocols.hpp"
#include "ampshield/tensor.hpp"

namespace ampshield {

// N_d^2 = |a|^2 + q(|b|^2+|g|^2) + q^2|d|^2, the null-result probability of
// the double weak measurement.
double survival_norm_sq(const TwoQubitCoeffs& c, double q);

// (a, b sqrt(q), g sqrt(q), d q) / N_d.
TwoQubitCoeffs damped_coeffs(const TwoQubitCoeffs& c, double q);

// True ancilla-outcome probabilities {00, 01, 10, 11} of one recovery round
// with tan(theta) = 1/sqrt(q), applied to the normalized damped state. They
// sum to one.
std::array<double, 4> round_branch_probabilities(const TwoQubitCoeffs& c,
                                                 double q);

// Bare branch weights {q^2, q, q, 1} / (N_d^2 (1+q)^2): the bookkeeping that
// drops the (un-)normalization of the post-outcome states. Only the 00 entry
// is a probability as-is; the others must be scaled by the squared norm of
// the corresponding surviving pattern (see round_branch_probabilities).
std::array<double, 4> round_branch_weights(const TwoQubitCoeffs& c, double q);

// Total success probability of the iterative scheme (weak measurement plus
// up to `rounds` recovery procedures), rounds in {1, 2, 3}. Independent of
// the input coefficients: every state-norm factor telescopes away.
double success_prob_closed(int rounds, double q);

// Concurrence of the two-qubit state after amplitude damping:
// max{0, 2q(|ad - bg| - p|d|^2)}.
double damped_concurrence(const TwoQubitCoeffs& c, double p);

// N_2 = 1 + p(|b|^2+|g|^2+2|d|^2) + p^2|d|^2, the squared norm of the
// surviving pattern in the post-selected protection branch.
double recovered_norm_sq(const TwoQubitCoeffs& c, double p);

// System density matrix after protection (damping, recovery round at
// tan(theta)=1/sqrt(q), ancillas post-selected on 00, environment traced).
DensityMatrix recovered_density(const TwoQubitCoeffs& c, double p);

// Probability of the 00 post-selection branch of protection:
// q^2 N_2 / (1+q)^2.
double postselect_probability(const TwoQubitCoeffs& c, double p);
// Alternative transcription q^2 / (N_2^2 (1+q)^2), adjudicated by verify.
double postselect_probability_variant(const TwoQubitCoeffs& c, double p);

// Concurrence of the protected state: max{0, 2(|ad - bg| - p|d|^2) / N_2}.
double recovered_concurrence(const TwoQubitCoeffs& c, double p);

// Damping strength at which the protected concurrence stops exceeding the
// damped one (the curves cross where q N_2 = 1). Empty when no crossing
// lies in (0, 1).
std::optional<double> crossing_threshold(const TwoQubitCoeffs& c);

// Damping strength where both concurrences hit zero (entanglement sudden
// death): p* = |ad - bg| / |d|^2. Empty when |d| = 0; may exceed 1, meaning
// entanglement survives all the way to p = 1.
std::optional<double> esd_point(const TwoQubitCoeffs& c);

// N_1^2 = |a|^2 + x(|b|^2+|g|^2) + x^2|d|^2 and the preparation success
// probability N_1^2/(1+x)^2.
double preparation_norm_sq(const TwoQubitCoeffs& c, double x);
double preparation_probability(const TwoQubitCoeffs& c, double x);

// Extended-scheme outputs; all reduce to the basic scheme under p -> p*x.
DensityMatrix extended_density(const TwoQubitCoeffs& c, double p, double x);
// Total success probability (preparation times recovery):
// (xq)^2 N_2(px) / ((1+x)^2 (1+xq)^2).
double extended_success_probability(const TwoQubitCoeffs& c, double p,
                                    double x);
double extended_concurrence(const TwoQubitCoeffs& c, double p, double x);
// Alternative transcription: numerator carries px|d| (first power) and the
// normalizer weighs |d|^2 negatively. Adjudicated by verify.
double extended_concurrence_variant(const TwoQubitCoeffs& c, double p,
                                    double x);

// Fidelity formulas; real coefficients only (they are stated without
// moduli). For complex inputs use metrics::fidelity_pure_mixed on the
// simulated state instead.
double damped_fidelity(const TwoQubitCoeffs& c, double p);
double recovered_fidelity(const TwoQubitCoeffs& c, double p);
double extended_fidelity(const TwoQubitCoeffs& c, double p, double x);
// Alternative transcription: x^2 instead of x on the (a^2+d^2)(b^2+g^2)
// term. Adjudicated by verify.
double extended_fidelity_variant(const TwoQubitCoeffs& c, double p, double x);

// All scalar formulas at one (coeffs, p, x) point.
struct ClosedFormSuite {
  double c_damped = 0.0;
  double c_recovered = 0.0;
  double c_extended = 0.0;
  double c_extended_variant = 0.0;
  std::optional<double> p_threshold;
  std::optional<double> p_esd;
  double f_damped = 0.0;
  double f_recovered = 0.0;
  double f_extended = 0.0;
  double f_extended_variant = 0.0;
};

ClosedFormSuite closed_form_suite(const TwoQubitCoeffs& c, double p, double x);

}  // namespace ampshield

#endif  // AMPSHIELD_CLOSED_FORMS_HPP
