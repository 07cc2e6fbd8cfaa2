// Copyright 2026 The quatdyn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quatdyn/quatmat.hpp"
#include "quatdyn/scenarios.hpp"

namespace quatdyn {

/// All schema violations of a config file, one message per line, each
/// prefixed with the offending key path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

/// Which checks a run evaluates along the trajectory.
enum class Check {
  trace,
  unitarity,
  positivity,
  pseudo_hermiticity,
  semigroup,
  property_i,
  property_ii,
};

std::string to_string(Check check);
std::optional<Check> check_from_string(const std::string& name);

struct ScenarioSpec {
  std::string name;  ///< "sec4" or "inline"

  // sec4 parameters.
  sec4::Params sec4_params;

  // inline scenario: explicit metric plus a sampled generator table.
  Eigen::Index dim = 0;
  QMatrix eta;
  std::optional<QMatrix> rho0;              ///< initial density; default 1/n
  std::string generator_kind;               ///< "frak_h" or "f"
  std::filesystem::path samples_file;       ///< resolved against the config dir
};

struct TimeSpec {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_samples = 0;
  double step = 1e-4;
};

struct OutputSpec {
  std::filesystem::path trajectory;
  std::filesystem::path report;
};

struct RunConfig {
  ScenarioSpec scenario;
  TimeSpec time;
  OutputSpec outputs;
  std::vector<Check> checks;  ///< empty = all checks applicable to the run
  bool checks_explicit = false;
  std::uint64_t seed = 42;
  /// Sweep axes (key order fixed: x, y, z_re, z_im, theta); used by the
  /// sweep command only.
  std::map<std::string, std::vector<double>> sweep;

  /// Normalized key/value echo for the report file.
  std::vector<std::pair<std::string, std::string>> echo;
};

struct VerifyConfig {
  std::string bundle;
  std::uint64_t seed = 42;
  double step = 1e-4;
  std::filesystem::path report;  ///< optional; empty = console only
};

/// Parses and validates a run/sweep config. Unknown keys, missing required
/// keys, duplicate keys and malformed values are all collected and thrown
/// together as a ConfigError.
RunConfig parse_run_config(const std::filesystem::path& path);

/// Parses a verify config (keys: bundle, seed, time.step, outputs.report).
VerifyConfig parse_verify_config(const std::filesystem::path& path);

/// Loads a whitespace-delimited generator sample table: one row per sample,
/// columns t, then alpha entries (row-major, re im), then beta entries.
/// '#' starts a comment.
std::pair<std::vector<double>, std::vector<QMatrix>> load_sample_table(
    const std::filesystem::path& path, Eigen::Index dim);

}  // namespace quatdyn
