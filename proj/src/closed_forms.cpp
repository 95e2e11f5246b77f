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

#include "ampshield/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ampshield {

namespace {

double sq(double v) { return v * v; }

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

void check_strength(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("strength x must be positive and finite");
  }
}

void check_real(const TwoQubitCoeffs& c, const char* who) {
  if (!c.is_real()) {
    throw std::invalid_argument(std::string(who) +
                                ": formula requires real coefficients");
  }
}

// |alpha*delta - beta*gamma|, the coherence that carries the entanglement.
double coherence(const TwoQubitCoeffs& c) {
  return std::abs(c.alpha * c.delta - c.beta * c.gamma);
}

// Bare branch factors of one full round at survival q (state-norm factors
// stripped; they telescope in any product along the branch tree).
double factor_a(double q) { return sq(q) / sq(1.0 + q); }  // outcome 00
double factor_b(double q) { return q / sq(1.0 + q); }      // outcome 01 or 10
double factor_c(double q) { return 1.0 / sq(1.0 + q); }    // outcome 11
// Bare factors of the one-qubit follow-up at factor q.
double factor_s(double q) { return sq(q) / (1.0 + sq(q)); }  // outcome 0
double factor_f(double q) { return 1.0 / (1.0 + sq(q)); }    // outcome 1

}  // namespace

double survival_norm_sq(const TwoQubitCoeffs& c, double q) {
  check_unit_interval(q, "q");
  return std::norm(c.alpha) + q * (std::norm(c.beta) + std::norm(c.gamma)) +
         sq(q) * std::norm(c.delta);
}

TwoQubitCoeffs damped_coeffs(const TwoQubitCoeffs& c, double q) {
  check_unit_interval(q, "q");
  const double rq = std::sqrt(q);
  return TwoQubitCoeffs::normalized(c.alpha, c.beta * rq, c.gamma * rq,
                                    c.delta * q);
}

std::array<double, 4> round_branch_probabilities(const TwoQubitCoeffs& c,
                                                 double q) {
  const double nd2 = survival_norm_sq(c, q);
  const double denom = nd2 * sq(1.0 + q);
  const double ma = std::norm(c.alpha);
  const double mb = std::norm(c.beta);
  const double mg = std::norm(c.gamma);
  const double md = std::norm(c.delta);
  const double n01 = ma + sq(q) * mb + mg + sq(q) * md;
  const double n10 = ma + mb + sq(q) * mg + sq(q) * md;
  const double n11 = ma + sq(q) * (mb + mg) + sq(sq(q)) * md;
  return {sq(q) / denom, q * n01 / denom, q * n10 / denom, n11 / denom};
}

std::array<double, 4> round_branch_weights(const TwoQubitCoeffs& c, double q) {
  const double denom = survival_norm_sq(c, q) * sq(1.0 + q);
  return {sq(q) / denom, q / denom, q / denom, 1.0 / denom};
}

double success_prob_closed(int rounds, double q) {
  check_unit_interval(q, "q");
  const double q2 = sq(q);
  switch (rounds) {
    case 1:
      return factor_a(q);
    case 2:
      return factor_a(q) + 2.0 * factor_b(q) * factor_s(q) +
             factor_c(q) * factor_a(q2);
    case 3:
      return success_prob_closed(2, q) +
             2.0 * factor_b(q) * factor_f(q) * factor_s(q2) +
             2.0 * factor_c(q) * factor_b(q2) * factor_s(q2) +
             factor_c(q) * factor_c(q2) * factor_a(sq(q2));
    default:
      throw std::invalid_argument(
          "success_prob_closed: rounds must be 1, 2, or 3");
  }
}

double damped_concurrence(const TwoQubitCoeffs& c, double p) {
  check_unit_interval(p, "p");
  const double q = 1.0 - p;
  return std::max(0.0, 2.0 * q * (coherence(c) - p * std::norm(c.delta)));
}

double recovered_norm_sq(const TwoQubitCoeffs& c, double p) {
  check_unit_interval(p, "p");
  const double md = std::norm(c.delta);
  return 1.0 + p * (std::norm(c.beta) + std::norm(c.gamma) + 2.0 * md) +
         sq(p) * md;
}

DensityMatrix recovered_density(const TwoQubitCoeffs& c, double p) {
  const double n2 = recovered_norm_sq(c, p);
  const complex a = c.alpha, b = c.beta, g = c.gamma, d = c.delta;
  Eigen::MatrixXcd m(4, 4);
  m(0, 0) = std::norm(a) + p * (std::norm(b) + std::norm(g)) +
            sq(p) * std::norm(d);
  m(0, 1) = a * std::conj(b) + p * g * std::conj(d);
  m(0, 2) = a * std::conj(g) + p * b * std::conj(d);
  m(0, 3) = a * std::conj(d);
  m(1, 1) = std::norm(b) + p * std::norm(d);
  m(1, 2) = b * std::conj(g);
  m(1, 3) = b * std::conj(d);
  m(2, 2) = std::norm(g) + p * std::norm(d);
  m(2, 3) = g * std::conj(d);
  m(3, 3) = std::norm(d);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  }
  m /= n2;
  return DensityMatrix{m};
}

double postselect_probability(const TwoQubitCoeffs& c, double p) {
  const double q = 1.0 - p;
  return sq(q) * recovered_norm_sq(c, p) / sq(1.0 + q);
}

double postselect_probability_variant(const TwoQubitCoeffs& c, double p) {
  const double q = 1.0 - p;
  return sq(q) / (sq(recovered_norm_sq(c, p)) * sq(1.0 + q));
}

double recovered_concurrence(const TwoQubitCoeffs& c, double p) {
  const double num = 2.0 * (coherence(c) - p * std::norm(c.delta));
  return std::max(0.0, num / recovered_norm_sq(c, p));
}

std::optional<double> crossing_threshold(const TwoQubitCoeffs& c) {
  const double ma = std::norm(c.alpha);
  const double md = std::norm(c.delta);
  if (md < kZeroNormThreshold) return std::nullopt;
  // The curves cross where q * N_2(p) = 1, a quadratic in p.
  const double lin = 1.0 - ma;
  const double disc = sq(lin) + 4.0 * md * (md - ma);
  if (disc < 0.0) return std::nullopt;
  const double p_th = (std::sqrt(disc) - lin) / (2.0 * md);
  if (p_th <= 0.0 || p_th >= 1.0) return std::nullopt;
  return p_th;
}

std::optional<double> esd_point(const TwoQubitCoeffs& c) {
  const double md = std::norm(c.delta);
  if (md < kZeroNormThreshold) return std::nullopt;
  return coherence(c) / md;
}

double preparation_norm_sq(const TwoQubitCoeffs& c, double x) {
  check_strength(x);
  return std::norm(c.alpha) + x * (std::norm(c.beta) + std::norm(c.gamma)) +
         sq(x) * std::norm(c.delta);
}

double preparation_probability(const TwoQubitCoeffs& c, double x) {
  return preparation_norm_sq(c, x) / sq(1.0 + x);
}

DensityMatrix extended_density(const TwoQubitCoeffs& c, double p, double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  return recovered_density(c, p * x);
}

double extended_success_probability(const TwoQubitCoeffs& c, double p,
                                    double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  const double xq = x * (1.0 - p);
  return sq(xq) * recovered_norm_sq(c, p * x) / (sq(1.0 + x) * sq(1.0 + xq));
}

double extended_concurrence(const TwoQubitCoeffs& c, double p, double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  return recovered_concurrence(c, p * x);
}

double extended_concurrence_variant(const TwoQubitCoeffs& c, double p,
                                    double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  const double ma = std::norm(c.alpha);
  const double md = std::norm(c.delta);
  const double px = p * x;
  const double num = 2.0 * (coherence(c) - px * std::abs(c.delta));
  const double den = 1.0 + px * (1.0 - ma - md) + sq(px) * md;
  return std::max(0.0, num / den);
}

double damped_fidelity(const TwoQubitCoeffs& c, double p) {
  check_unit_interval(p, "p");
  check_real(c, "damped_fidelity");
  const double a = c.alpha.real(), b = c.beta.real(), g = c.gamma.real(),
               d = c.delta.real();
  const double q = 1.0 - p;
  const double rq = std::sqrt(q);
  const double overlap = sq(a) + rq * (sq(b) + sq(g)) + q * sq(d);
  return sq(overlap) + 4.0 * p * rq * a * b * g * d +
         p * (sq(a) + q * sq(d)) * (sq(b) + sq(g)) + sq(p) * sq(a) * sq(d);
}

double recovered_fidelity(const TwoQubitCoeffs& c, double p) {
  check_unit_interval(p, "p");
  check_real(c, "recovered_fidelity");
  const double a = c.alpha.real(), b = c.beta.real(), g = c.gamma.real(),
               d = c.delta.real();
  const double num = 1.0 + 4.0 * p * a * b * g * d +
                     p * (sq(a) + sq(d)) * (sq(b) + sq(g)) +
                     sq(p) * sq(a) * sq(d);
  return num / recovered_norm_sq(c, p);
}

double extended_fidelity(const TwoQubitCoeffs& c, double p, double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  return recovered_fidelity(c, p * x);
}

double extended_fidelity_variant(const TwoQubitCoeffs& c, double p, double x) {
  check_unit_interval(p, "p");
  check_strength(x);
  check_real(c, "extended_fidelity_variant");
  const double a = c.alpha.real(), b = c.beta.real(), g = c.gamma.real(),
               d = c.delta.real();
  const double px = p * x;
  const double num = 1.0 + 4.0 * px * a * b * g * d +
                     p * sq(x) * (sq(a) + sq(d)) * (sq(b) + sq(g)) +
                     sq(px) * sq(a) * sq(d);
  return num / recovered_norm_sq(c, px);
}

ClosedFormSuite closed_form_suite(const TwoQubitCoeffs& c, double p,
                                  double x) {
  ClosedFormSuite suite;
  suite.c_damped = damped_concurrence(c, p);
  suite.c_recovered = recovered_concurrence(c, p);
  suite.c_extended = extended_concurrence(c, p, x);
  suite.c_extended_variant = extended_concurrence_variant(c, p, x);
  suite.p_threshold = crossing_threshold(c);
  suite.p_esd = esd_point(c);
  suite.f_damped = damped_fidelity(c, p);
  suite.f_recovered = recovered_fidelity(c, p);
  suite.f_extended = extended_fidelity(c, p, x);
  suite.f_extended_variant = extended_fidelity_variant(c, p, x);
  return suite;
}

}  // namespace ampshield
