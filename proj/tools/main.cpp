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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ampshield/sweep.hpp"
#include "ampshield/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitIoError = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type begin = 0;
  for (;;) {
    const auto end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end - begin));
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ampshield::ConfigError(field + ": '" + text + "' is not a number");
  }
}

int parse_int(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ampshield::ConfigError(field + ": '" + text + "' is not an integer");
  }
}

ampshield::TwoQubitCoeffs parse_coeffs_flag(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 4) {
    throw ampshield::ConfigError(
        "coeffs: expected four comma-separated values, got " +
        std::to_string(parts.size()));
  }
  return ampshield::TwoQubitCoeffs::normalized(
      ampshield::parse_complex(parts[0]), ampshield::parse_complex(parts[1]),
      ampshield::parse_complex(parts[2]), ampshield::parse_complex(parts[3]));
}

ampshield::PGrid parse_p_grid_flag(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) {
    throw ampshield::ConfigError(
        "p_grid: expected start:stop:steps, got '" + text + "'");
  }
  ampshield::PGrid grid;
  grid.start = parse_double(parts[0], "p_grid.start");
  grid.stop = parse_double(parts[1], "p_grid.stop");
  grid.steps = parse_int(parts[2], "p_grid.steps");
  return grid;
}

std::vector<double> parse_x_flag(const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    values.push_back(parse_double(part, "x_values"));
  }
  return values;
}

int run_fig(const std::string& id, const std::string& out_dir) {
  const ampshield::SweepTable table = ampshield::figure_table(id);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw ampshield::IoError("cannot create output directory '" + out_dir +
                             "': " + ec.message());
  }
  const std::filesystem::path path =
      std::filesystem::path(out_dir) / ("fig" + id + ".csv");
  ampshield::write_csv(table, path.string());
  std::cout << "wrote " << path.string() << " (" << table.rows.size()
            << " rows)\n";
  return kExitOk;
}

int run_sweep_cmd(const ampshield::SweepConfig& config) {
  config.validate();
  const ampshield::SweepTable table = ampshield::run_sweep(config);
  if (config.output_path.empty()) {
    std::cout << ampshield::to_csv(table);
  } else {
    ampshield::write_csv(table, config.output_path);
    std::cout << "wrote " << config.output_path << " (" << table.rows.size()
              << " rows)\n";
  }
  return kExitOk;
}

int run_verify(bool as_json) {
  const ampshield::VerifyReport report = ampshield::run_verification();
  if (as_json) {
    std::cout << ampshield::report_json_text(report);
  } else {
    std::cout << ampshield::format_report(report);
  }
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ampshield: few-qubit simulation of amplitude-damping protection "
      "protocols"};
  app.require_subcommand(1);

  // fig
  std::string fig_id;
  std::string fig_out = ".";
  CLI::App* fig = app.add_subcommand(
      "fig", "Write a reference-figure CSV (fig<id>.csv) to a directory");
  fig->add_option("--id", fig_id, "Figure id: 2, 3a, 3b, 6a, or 6b")
      ->required();
  fig->add_option("--out", fig_out, "Output directory (created if missing)");

  // sweep
  std::string config_path;
  std::string scheme_flag;
  std::string coeffs_flag;
  std::string p_grid_flag;
  std::string x_flag;
  int repeats_flag = -1;
  std::string out_flag;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a parameter sweep and emit CSV (file or stdout)");
  CLI::Option* config_opt =
      sweep->add_option("--config", config_path, "JSON config file");
  CLI::Option* scheme_opt = sweep->add_option(
      "--scheme", scheme_flag, "weak-recovery | ad-protect | extended");
  CLI::Option* coeffs_opt = sweep->add_option(
      "--coeffs", coeffs_flag,
      "Four comma-separated complex coefficients (e.g. 0.5,0.5,0.5,0.5 or "
      "0.5+0.1i,...)");
  CLI::Option* p_grid_opt = sweep->add_option(
      "--p-grid", p_grid_flag, "Damping grid as start:stop:steps");
  CLI::Option* x_opt = sweep->add_option(
      "--x", x_flag, "Comma-separated x values (extended scheme)");
  CLI::Option* repeats_opt = sweep->add_option(
      "--repeats", repeats_flag, "Recovery rounds N (weak-recovery scheme)");
  sweep->add_option("--out", out_flag, "Output CSV path (default: stdout)");
  for (CLI::Option* opt :
       {scheme_opt, coeffs_opt, p_grid_opt, x_opt, repeats_opt}) {
    config_opt->excludes(opt);
  }

  // verify
  bool as_json = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the closed-form verification suite and report");
  verify->add_flag("--json", as_json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (fig->parsed()) return run_fig(fig_id, fig_out);
    if (sweep->parsed()) {
      ampshield::SweepConfig config;
      if (!config_path.empty()) {
        config = ampshield::load_sweep_config(config_path);
      } else {
        if (scheme_flag.empty()) {
          throw ampshield::ConfigError(
              "scheme: required (pass --config or --scheme)");
        }
        config.scheme = ampshield::parse_scheme(scheme_flag);
        if (coeffs_flag.empty()) {
          throw ampshield::ConfigError("coeffs: required for inline sweeps");
        }
        config.coeffs = parse_coeffs_flag(coeffs_flag);
        if (!p_grid_flag.empty()) config.p_grid = parse_p_grid_flag(p_grid_flag);
        if (!x_flag.empty()) config.x_values = parse_x_flag(x_flag);
        if (repeats_flag >= 0) config.repeats = repeats_flag;
      }
      if (!out_flag.empty()) config.output_path = out_flag;
      return run_sweep_cmd(config);
    }
    if (verify->parsed()) return run_verify(as_json);
  } catch (const ampshield::ConfigError& e) {
    std::cerr << "error: invalid config: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const ampshield::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  return kExitOk;
}
