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

#ifndef AMPSHIELD_SWEEP_HPP
#define AMPSHIELD_SWEEP_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ampshield/protocols.hpp"

namespace ampshield {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Scheme { WeakRecovery, AdProtect, Extended };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme scheme);

// Uniform grid over damping strength p, endpoints included.
struct PGrid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;

  void validate() const;
  double at(int i) const;
};

struct SweepConfig {
  Scheme scheme = Scheme::AdProtect;
  TwoQubitCoeffs coeffs;
  PGrid p_grid;
  std::vector<double> x_values{1.0};  // extended scheme only
  int repeats = 3;                    // weak-recovery rounds (1..3)
  std::string output_path;

  void validate() const;
};

// Parses "re", "imi", or "re+imi" (also with '-'), e.g. "0.5-0.25i".
complex parse_complex(const std::string& text);

// Parses a JSON document with keys matching the SweepConfig field names:
// scheme, coeffs, p_grid {start, stop, steps}, x_values, repeats,
// output_path. Throws ConfigError naming the offending field.
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// One row per grid point, deterministic order (p outer, x inner). Column
// sets are fixed per scheme; values at unreachable post-selection branches
// (e.g. p = 1) are reported as 0.
SweepTable run_sweep(const SweepConfig& config);

// Figure tables, 101 p-points in [0, 1]:
//   "2"          p, P_N1, P_N2, P_N3, q2 (closed forms; the simulator is
//                held against them by the verification suite)
//   "3a", "3b"   p, C_damped, C_recovered, C_ext_x0.8, C_ext_x0.5,
//                C_ext_x0.1 (simulated)
//   "6a", "6b"   same layout with fidelities (simulated)
SweepTable figure_table(const std::string& id);
const std::vector<std::string>& figure_ids();

// Coefficient families used by the bundled figures, renormalized:
// A = (0.7, 0.35, 0.4, 0.48) and B = (0.10, 0.55, -0.60, 0.57).
TwoQubitCoeffs figure_family_a();
TwoQubitCoeffs figure_family_b();

// Serialization: header row plus one line per row, 17 significant digits,
// '.' decimal, byte-identical across runs and thread counts.
std::string to_csv(const SweepTable& table);
void write_csv(const SweepTable& table, const std::string& path);

// Worker count for grid evaluation: AMPSHIELD_THREADS, where unset, empty,
// or 0 means hardware concurrency.
int thread_budget();

}  // namespace ampshield

#endif  // AMPSHIELD_SWEEP_HPP
