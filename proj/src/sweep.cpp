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

#include "ampshield/sweep.hpp"

#include <atomic>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "ampshield/closed_forms.hpp"
#include "ampshield/metrics.hpp"

namespace ampshield {

namespace {

using nlohmann::json;

// Evaluates fn(0..count-1) on up to thread_budget() workers. Row storage is
// index-addressed, so results are identical for any worker count.
void for_each_index(int count, const std::function<void(int)>& fn) {
  int workers = std::min(thread_budget(), count);
  if (workers < 1) workers = 1;
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_value(double v) {
  if (!std::isfinite(v)) {
    throw std::logic_error("non-finite value in table output");
  }
  v += 0.0;  // normalize -0 to +0 for byte-stable output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DensityMatrix damped_density_sim(const TwoQubitCoeffs& c,
                                 const DampingParams& p) {
  return partial_trace(damp_env(c, p), {0, 1});
}

// Branch-conditioned quantities are 0 where the post-selection branch has
// zero weight (e.g. p = 1).
template <typename Fn>
double zero_if_impossible(Fn&& fn) {
  try {
    return fn();
  } catch (const ImpossibleBranchError&) {
    return 0.0;
  }
}

struct ExtendedPoint {
  double concurrence = 0.0;
  double fidelity = 0.0;
  double success = 0.0;
};

ExtendedPoint extended_point(const TwoQubitCoeffs& c, const DampingParams& p,
                             double x) {
  ExtendedPoint point;
  try {
    const RecoveryResult res = extended_protect(c, p, x);
    const DensityMatrix& rho = std::get<DensityMatrix>(res.recovered);
    point.concurrence = concurrence_mixed(rho);
    point.fidelity = fidelity_pure_mixed(c.to_state(), rho);
    point.success = res.success_probability;
  } catch (const ImpossibleBranchError&) {
    // all-zero point
  }
  return point;
}

SweepTable weak_recovery_table(const SweepConfig& config) {
  SweepTable table;
  table.columns = {"p",      "q",         "N",
                   "success_sim", "success_closed", "recovery_error_max"};
  table.rows.assign(config.p_grid.steps, {});
  for_each_index(config.p_grid.steps, [&](int i) {
    const double p = config.p_grid.at(i);
    const double q = 1.0 - p;
    double success = 0.0;
    double err = 0.0;
    try {
      const RecoveryResult res =
          recover_iterative(config.coeffs, DampingParams(p), config.repeats);
      success = res.success_probability;
      err = res.max_recovery_error;
    } catch (const ImpossibleBranchError&) {
      // weak measurement itself impossible (p = 1 with no ground component)
    }
    table.rows[i] = {p,       q,   static_cast<double>(config.repeats),
                     success, success_prob_closed(config.repeats, q), err};
  });
  return table;
}

SweepTable ad_protect_table(const SweepConfig& config) {
  SweepTable table;
  table.columns = {"p",
                   "C_damped_sim",
                   "C_damped_closed",
                   "C_recovered_sim",
                   "C_recovered_closed",
                   "F_damped_sim",
                   "F_damped_closed",
                   "F_recovered_sim",
                   "F_recovered_closed",
                   "success_sim",
                   "success_closed",
                   "success_closed_variant"};
  table.rows.assign(config.p_grid.steps, {});
  const TwoQubitCoeffs& c = config.coeffs;
  const StateVector input = c.to_state();
  for_each_index(config.p_grid.steps, [&](int i) {
    const double p = config.p_grid.at(i);
    const DampingParams dp(p);
    const DensityMatrix rho_d = damped_density_sim(c, dp);
    double c_rec_sim = 0.0, f_rec_sim = 0.0, success_sim = 0.0;
    try {
      const RecoveryResult res = protect(c, dp);
      const DensityMatrix& rho_f = std::get<DensityMatrix>(res.recovered);
      c_rec_sim = concurrence_mixed(rho_f);
      f_rec_sim = fidelity_pure_mixed(input, rho_f);
      success_sim = res.success_probability;
    } catch (const ImpossibleBranchError&) {
    }
    table.rows[i] = {p,
                     concurrence_mixed(rho_d),
                     damped_concurrence(c, p),
                     c_rec_sim,
                     recovered_concurrence(c, p),
                     fidelity_pure_mixed(input, rho_d),
                     damped_fidelity(c, p),
                     f_rec_sim,
                     recovered_fidelity(c, p),
                     success_sim,
                     postselect_probability(c, p),
                     postselect_probability_variant(c, p)};
  });
  return table;
}

SweepTable extended_table(const SweepConfig& config) {
  SweepTable table;
  table.columns = {"p",
                   "x",
                   "C_ext_sim",
                   "C_ext_closed",
                   "C_ext_closed_variant",
                   "F_ext_sim",
                   "F_ext_closed",
                   "F_ext_closed_variant",
                   "success_sim",
                   "success_closed"};
  const int nx = static_cast<int>(config.x_values.size());
  const int count = config.p_grid.steps * nx;
  table.rows.assign(count, {});
  const TwoQubitCoeffs& c = config.coeffs;
  for_each_index(count, [&](int idx) {
    const double p = config.p_grid.at(idx / nx);
    const double x = config.x_values[idx % nx];
    const ExtendedPoint point = extended_point(c, DampingParams(p), x);
    table.rows[idx] = {p,
                       x,
                       point.concurrence,
                       extended_concurrence(c, p, x),
                       extended_concurrence_variant(c, p, x),
                       point.fidelity,
                       extended_fidelity(c, p, x),
                       extended_fidelity_variant(c, p, x),
                       point.success,
                       extended_success_probability(c, p, x)};
  });
  return table;
}

constexpr int kFigureSteps = 101;
const double kFigureX[3] = {0.8, 0.5, 0.1};

SweepTable figure_success_table() {
  SweepTable table;
  table.columns = {"p", "P_N1", "P_N2", "P_N3", "q2"};
  table.rows.assign(kFigureSteps, {});
  PGrid grid;
  for_each_index(kFigureSteps, [&](int i) {
    const double p = grid.at(i);
    const double q = 1.0 - p;
    table.rows[i] = {p, success_prob_closed(1, q), success_prob_closed(2, q),
                     success_prob_closed(3, q), q * q};
  });
  return table;
}

SweepTable figure_metric_table(const TwoQubitCoeffs& c, bool fidelity) {
  SweepTable table;
  const std::string prefix = fidelity ? "F" : "C";
  table.columns = {"p",
                   prefix + "_damped",
                   prefix + "_recovered",
                   prefix + "_ext_x0.8",
                   prefix + "_ext_x0.5",
                   prefix + "_ext_x0.1"};
  table.rows.assign(kFigureSteps, {});
  const StateVector input = c.to_state();
  PGrid grid;
  for_each_index(kFigureSteps, [&](int i) {
    const double p = grid.at(i);
    const DampingParams dp(p);
    const DensityMatrix rho_d = damped_density_sim(c, dp);
    std::vector<double>& row = table.rows[i];
    row.push_back(p);
    row.push_back(fidelity ? fidelity_pure_mixed(input, rho_d)
                           : concurrence_mixed(rho_d));
    row.push_back(zero_if_impossible([&] {
      const RecoveryResult res = protect(c, dp);
      const DensityMatrix& rho = std::get<DensityMatrix>(res.recovered);
      return fidelity ? fidelity_pure_mixed(input, rho)
                      : concurrence_mixed(rho);
    }));
    for (double x : kFigureX) {
      const ExtendedPoint point = extended_point(c, dp, x);
      row.push_back(fidelity ? point.fidelity : point.concurrence);
    }
  });
  return table;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "weak-recovery") return Scheme::WeakRecovery;
  if (name == "ad-protect") return Scheme::AdProtect;
  if (name == "extended") return Scheme::Extended;
  throw ConfigError(
      "scheme: expected one of weak-recovery, ad-protect, extended; got '" +
      name + "'");
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::WeakRecovery:
      return "weak-recovery";
    case Scheme::AdProtect:
      return "ad-protect";
    case Scheme::Extended:
      return "extended";
  }
  return "unknown";
}

void PGrid::validate() const {
  if (!(start >= 0.0 && start < stop && stop <= 1.0)) {
    throw ConfigError("p_grid: requires 0 <= start < stop <= 1");
  }
  if (steps < 2) {
    throw ConfigError("p_grid: steps must be at least 2");
  }
}

double PGrid::at(int i) const {
  if (i == steps - 1) return stop;  // endpoint exact
  return start + (stop - start) * static_cast<double>(i) /
                     static_cast<double>(steps - 1);
}

void SweepConfig::validate() const {
  p_grid.validate();
  switch (scheme) {
    case Scheme::WeakRecovery:
      if (repeats < 1 || repeats > 3) {
        throw ConfigError("repeats: must be 1, 2, or 3");
      }
      break;
    case Scheme::AdProtect:
    case Scheme::Extended:
      if (!coeffs.is_real()) {
        throw ConfigError(
            "coeffs: scheme '" + scheme_name(scheme) +
            "' requires real coefficients (its fidelity formulas are "
            "stated for real amplitudes)");
      }
      break;
  }
  if (scheme == Scheme::Extended) {
    if (x_values.empty()) {
      throw ConfigError("x_values: must be non-empty for scheme 'extended'");
    }
    for (double x : x_values) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw ConfigError("x_values: entries must be positive and finite");
      }
    }
  }
}

complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  const auto fail = [&text]() -> complex {
    throw ConfigError("coeffs: cannot parse complex literal '" + text +
                      "' (expected re, imi, or re+imi)");
  };
  if (s.empty()) return fail();
  const char* begin = s.c_str();
  char* end = nullptr;
  const double first = std::strtod(begin, &end);
  if (end == begin) return fail();
  if (*end == '\0') return complex(first, 0.0);
  if (*end == 'i' && *(end + 1) == '\0') return complex(0.0, first);
  if (*end != '+' && *end != '-') return fail();
  const char* second_begin = end;
  char* end2 = nullptr;
  const double second = std::strtod(second_begin, &end2);
  if (end2 == second_begin || *end2 != 'i' || *(end2 + 1) != '\0') {
    return fail();
  }
  return complex(first, second);
}

namespace {

complex coeff_from_json(const json& value) {
  if (value.is_number()) return complex(value.get<double>(), 0.0);
  if (value.is_string()) return parse_complex(value.get<std::string>());
  throw ConfigError("coeffs: entries must be numbers or 're+imi' strings");
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> known = {
      "scheme", "coeffs", "p_grid", "x_values", "repeats", "output_path"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("unknown config field '" + item.key() + "'");
    }
  }

  SweepConfig config;
  try {
    config.scheme = parse_scheme(doc.at("scheme").get<std::string>());
  } catch (const json::exception&) {
    throw ConfigError("scheme: required string field");
  }
  try {
    const json& coeffs = doc.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != 4) {
      throw ConfigError("coeffs: must be an array of four entries");
    }
    config.coeffs = TwoQubitCoeffs::normalized(
        coeff_from_json(coeffs[0]), coeff_from_json(coeffs[1]),
        coeff_from_json(coeffs[2]), coeff_from_json(coeffs[3]));
  } catch (const json::exception&) {
    throw ConfigError("coeffs: required array of four numbers or strings");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("coeffs: ") + e.what());
  }
  if (doc.contains("p_grid")) {
    const json& grid = doc.at("p_grid");
    if (!grid.is_object()) {
      throw ConfigError("p_grid: must be an object {start, stop, steps}");
    }
    try {
      config.p_grid.start = grid.at("start").get<double>();
      config.p_grid.stop = grid.at("stop").get<double>();
      config.p_grid.steps = grid.at("steps").get<int>();
    } catch (const json::exception&) {
      throw ConfigError("p_grid: requires numeric start, stop, steps");
    }
  }
  if (doc.contains("x_values")) {
    try {
      config.x_values = doc.at("x_values").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError("x_values: must be an array of numbers");
    }
  }
  if (doc.contains("repeats")) {
    try {
      config.repeats = doc.at("repeats").get<int>();
    } catch (const json::exception&) {
      throw ConfigError("repeats: must be an integer");
    }
  }
  if (doc.contains("output_path")) {
    try {
      config.output_path = doc.at("output_path").get<std::string>();
    } catch (const json::exception&) {
      throw ConfigError("output_path: must be a string");
    }
  }
  config.validate();
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_sweep_config(text.str());
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  switch (config.scheme) {
    case Scheme::WeakRecovery:
      return weak_recovery_table(config);
    case Scheme::AdProtect:
      return ad_protect_table(config);
    case Scheme::Extended:
      return extended_table(config);
  }
  throw std::logic_error("run_sweep: unhandled scheme");
}

TwoQubitCoeffs figure_family_a() {
  return TwoQubitCoeffs::normalized(0.7, 0.35, 0.4, 0.48);
}

TwoQubitCoeffs figure_family_b() {
  return TwoQubitCoeffs::normalized(0.10, 0.55, -0.60, 0.57);
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"2", "3a", "3b", "6a", "6b"};
  return ids;
}

SweepTable figure_table(const std::string& id) {
  if (id == "2") return figure_success_table();
  if (id == "3a") return figure_metric_table(figure_family_a(), false);
  if (id == "3b") return figure_metric_table(figure_family_b(), false);
  if (id == "6a") return figure_metric_table(figure_family_a(), true);
  if (id == "6b") return figure_metric_table(figure_family_b(), true);
  throw ConfigError("figure id: expected one of 2, 3a, 3b, 6a, 6b; got '" +
                    id + "'");
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const std::vector<double>& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("table row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const SweepTable& table, const std::string& path) {
  const std::string body = to_csv(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << body;
  if (!out) throw IoError("failed while writing: " + path);
}

int thread_budget() {
  const char* env = std::getenv("AMPSHIELD_THREADS");
  long requested = 0;
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    requested = std::strtol(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || requested < 0) {
      throw ConfigError(
          "AMPSHIELD_THREADS must be a non-negative integer (0 = auto)");
    }
  }
  if (requested == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return static_cast<int>(requested);
}

}  // namespace ampshield
