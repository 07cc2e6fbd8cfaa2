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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quatdyn/config.hpp"
#include "quatdyn/run.hpp"
#include "quatdyn/version.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  CLI::Option* config = cmd->add_option("--config", flags.config, "run configuration file");
  if (config_required) config->required();
  cmd->add_option("--out", flags.out_dir, "output directory (default: current directory)");
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--step", flags.step, "override the integrator substep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quatdyn - quaternionic quasistationary dynamics engine"};
  app.set_version_flag("--version", std::string(quatdyn::kVersion));
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "propagate a trajectory and write outputs");
  add_common(run, run_flags, true);

  CommonFlags verify_flags;
  std::string bundle;
  CLI::App* verify = app.add_subcommand("verify", "run a verification bundle");
  add_common(verify, verify_flags, false);
  verify->add_option("--bundle", bundle,
                     "bundle name (algebra, sec4, properties, semigroup, factorization, all)");

  CommonFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep, sweep_flags, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      quatdyn::RunConfig cfg = quatdyn::parse_run_config(run_flags.config);
      if (run_flags.seed) cfg.seed = *run_flags.seed;
      if (run_flags.step) cfg.time.step = *run_flags.step;
      return quatdyn::cmd_run(cfg, run_flags.out_dir, std::cout);
    }
    if (verify->parsed()) {
      quatdyn::VerifyConfig cfg;
      if (!verify_flags.config.empty()) {
        cfg = quatdyn::parse_verify_config(verify_flags.config);
      }
      if (!bundle.empty()) cfg.bundle = bundle;
      if (cfg.bundle.empty()) {
        std::cerr << "verify: no bundle given (use --bundle or a config with a bundle key)\n";
        return 2;
      }
      if (verify_flags.seed) cfg.seed = *verify_flags.seed;
      if (verify_flags.step) cfg.step = *verify_flags.step;
      return quatdyn::cmd_verify(cfg, verify_flags.out_dir, std::cout);
    }
    if (sweep->parsed()) {
      quatdyn::RunConfig cfg = quatdyn::parse_run_config(sweep_flags.config);
      if (sweep_flags.seed) cfg.seed = *sweep_flags.seed;
      if (sweep_flags.step) cfg.time.step = *sweep_flags.step;
      return quatdyn::cmd_sweep(cfg, sweep_flags.out_dir, std::cout);
    }
  } catch (const quatdyn::ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
