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

#include <filesystem>
#include <iosfwd>

#include "quatdyn/checks.hpp"
#include "quatdyn/config.hpp"
#include "quatdyn/dynamics.hpp"

namespace quatdyn {

struct RunArtifacts {
  Trajectory trajectory;
  std::vector<CheckResult> checks;
};

/// Assembles the scenario, propagates the trajectory over the configured
/// grid, and evaluates the enabled checks. Throws on invalid setups
/// (unknown scenario, non-positive inline metric, a check that needs a
/// complex metric, breakpoints not split by the grid).
RunArtifacts execute_run(const RunConfig& cfg);

/// Trajectory file: one '#' header line naming the columns, then one
/// tab-separated row per sample with 17 significant digits
/// (t, rho_tilde alpha entries re/im row-major, rho_tilde beta entries,
/// projected-state entries, Re tr, projection min eigenvalue,
/// eta-unitarity residual).
void write_trajectory(const Trajectory& trajectory, const std::filesystem::path& path);

/// run: executes the config, writes the trajectory and report files under
/// out_dir, prints a summary. Returns 0 when everything passed, 1 when a
/// check failed.
int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// verify: runs a named bundle, prints one line per check, optionally
/// writes a report. Exit status 0 exactly when no check failed.
int cmd_verify(const VerifyConfig& cfg, const std::filesystem::path& out_dir,
               std::ostream& log);

/// sweep: runs the config once per point of the sweep grid (subdirectories
/// run_000, run_001, ...) and writes an index.tsv mapping parameters to
/// outputs. Invalid grid points are reported and skipped.
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace quatdyn
