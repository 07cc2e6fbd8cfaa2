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

#include "quatdyn/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quatdyn/projection.hpp"
#include "quatdyn/scenarios.hpp"
#include "quatdyn/version.hpp"

namespace quatdyn {

namespace {

constexpr double kCheckTol = 1e-8;
constexpr double kSemigroupGapMin = 0.1;
constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cmp_symbol(CheckResult::Cmp cmp) {
  return cmp == CheckResult::Cmp::at_most ? "<=" : ">=";
}

struct ScenarioSetup {
  Metric metric;
  GeneralizedDensity state0;
  GeneratorSource undressed;  ///< anti-Hermitian generator of U
};

ScenarioSetup build_scenario(const RunConfig& cfg) {
  const ScenarioSpec& sc = cfg.scenario;
  if (sc.name == "sec4") {
    const sec4::Params& p = sc.sec4_params;
    Metric m = sec4::metric(p);
    GeneralizedDensity state0 = sec4::initial_state(p);
    GeneratorSource src =
        sec4::generator_source(p, cfg.time.t_start - 1.0, cfg.time.t_end + 1.0);
    return {std::move(m), std::move(state0), std::move(src)};
  }
  if (sc.name == "inline") {
    Metric m(sc.eta);
    if (!m.is_positive()) {
      throw std::invalid_argument(
          "inline scenario: eta must be positive (the dressing V = T^-1 U T needs a root)");
    }
    const QMatrix rho0 = sc.rho0.value_or(
        (1.0 / static_cast<double>(sc.dim)) * QMatrix::identity(sc.dim));
    GeneralizedDensity state0 = GeneralizedDensity::from_rho(rho0, m);

    auto [times, values] = load_sample_table(sc.samples_file, sc.dim);
    GeneratorSource table = GeneratorSource::sampled(
        GeneratorSource::Role::anti_hermitian, std::move(times), std::move(values));
    if (sc.generator_kind == "frak_h") {
      return {std::move(m), std::move(state0), std::move(table)};
    }
    // kind "f": the table is the factor F(t); the undressed generator is
    // T F(t) T with T = eta^(1/2), whose dressing reproduces H = F eta.
    const QMatrix root = m.root();
    GeneratorSource undressed = GeneratorSource::closed_form(
        GeneratorSource::Role::anti_hermitian, sc.dim,
        [table, root](double t) { return root * table(t) * root; });
    return {std::move(m), std::move(state0), std::move(undressed)};
  }
  throw std::invalid_argument("unknown scenario: " + sc.name);
}

std::vector<Check> applicable_checks(const RunConfig& cfg, const Metric& m) {
  std::vector<Check> checks{Check::trace, Check::unitarity, Check::pseudo_hermiticity};
  if (m.is_complex() && m.is_positive()) {
    checks.insert(checks.end(), {Check::positivity, Check::property_i, Check::property_ii});
  }
  if (cfg.scenario.name == "sec4") checks.push_back(Check::semigroup);
  return checks;
}

struct Worst {
  double value = 0.0;
  double t = std::numeric_limits<double>::quiet_NaN();
  void update(double v, double at) {
    if (v > value) {
      value = v;
      t = at;
    }
  }
};

}  // namespace

RunArtifacts execute_run(const RunConfig& cfg) {
  ScenarioSetup setup = build_scenario(cfg);
  const Metric& m = setup.metric;
  const bool projective = m.is_complex() && m.is_positive();

  std::vector<Check> checks = cfg.checks_explicit ? cfg.checks : applicable_checks(cfg, m);
  for (Check check : checks) {
    if ((check == Check::positivity || check == Check::property_i ||
         check == Check::property_ii) &&
        !projective) {
      throw std::invalid_argument("check " + to_string(check) +
                                  " requires a complex positive metric");
    }
    if (check == Check::semigroup && cfg.scenario.name != "sec4") {
      throw std::invalid_argument("check semigroup requires the sec4 scenario");
    }
  }

  const std::vector<double> grid =
      linspace(cfg.time.t_start, cfg.time.t_end, cfg.time.n_samples);
  const UnitaryPropagation prop =
      propagate_unitary(setup.undressed, grid, {.step = cfg.time.step});

  const QMatrix rho_tilde0 = setup.state0.rho_tilde();
  const QMatrix rho0 = setup.state0.rho();

  Trajectory traj;
  traj.times = prop.times;
  const std::size_t n_steps = prop.times.size();
  traj.unitaries.reserve(n_steps);
  traj.evolutions.reserve(n_steps);
  traj.rho_tilde.reserve(n_steps);
  traj.rho_tilde_alpha.reserve(n_steps);
  traj.diagnostics.reserve(n_steps);

  for (std::size_t k = 0; k < n_steps; ++k) {
    QMatrix v = dress(prop.unitaries[k], m);
    QMatrix rho_tilde = evolve_generalized(rho_tilde0, v);
    // The projected state goes through the finite map route when the
    // projection theorems apply; the full-arithmetic projection otherwise.
    CMatrix projected = projective
                            ? project_map_finite(rho0, SplitOperator::from(v), m)
                            : complex_projection(rho_tilde);

    Trajectory::Diagnostics diag;
    diag.re_trace = re_trace(rho_tilde);
    diag.eta_unitarity_residual = is_eta_unitary(v, m, 1.0).residual;
    diag.pseudo_hermiticity_residual = is_pseudo_hermitian(rho_tilde, m, 1.0).residual;
    diag.unitarity_drift = prop.unitarity_drift[k];
    diag.projection_re_trace = projected.trace().real();
    {
      const QMatrix embedded{projected};
      diag.projection_hermiticity_residual =
          max_abs_diff(m.eta() * embedded * m.eta_inv(), embedded.dagger());
      const QMatrix form = m.root() * embedded * m.root_inv();
      diag.min_eig_projection = hermitian_eigenvalues(0.5 * (form + form.dagger()))(0);
    }

    traj.unitaries.push_back(prop.unitaries[k]);
    traj.evolutions.push_back(std::move(v));
    traj.rho_tilde.push_back(std::move(rho_tilde));
    traj.rho_tilde_alpha.push_back(std::move(projected));
    traj.diagnostics.push_back(diag);
  }

  RunArtifacts artifacts;
  artifacts.trajectory = std::move(traj);

  for (Check check : checks) {
    Worst worst;
    const Trajectory& t = artifacts.trajectory;
    switch (check) {
      case Check::trace:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(std::abs(t.diagnostics[k].re_trace - 1.0), t.times[k]);
        }
        break;
      case Check::unitarity:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(t.diagnostics[k].eta_unitarity_residual, t.times[k]);
        }
        break;
      case Check::pseudo_hermiticity:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(t.diagnostics[k].pseudo_hermiticity_residual, t.times[k]);
        }
        break;
      case Check::positivity:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(std::max(0.0, -t.diagnostics[k].min_eig_projection), t.times[k]);
        }
        break;
      case Check::property_i:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(t.diagnostics[k].projection_hermiticity_residual, t.times[k]);
        }
        break;
      case Check::property_ii:
        for (std::size_t k = 0; k < n_steps; ++k) {
          worst.update(std::max(std::abs(t.diagnostics[k].projection_re_trace - 1.0),
                                std::max(0.0, -t.diagnostics[k].min_eig_projection)),
                       t.times[k]);
        }
        break;
      case Check::semigroup: {
        const sec4::SemigroupGap gap =
            sec4::semigroup_gap(kPi / 4.0, kPi / 8.0, cfg.scenario.sec4_params);
        std::ostringstream note;
        note << "direct=" << gap.direct.real() << " composed=" << gap.composed.real()
             << " quoted=" << gap.paper_direct << "/" << gap.paper_composed;
        artifacts.checks.push_back({to_string(check), gap.gap >= kSemigroupGapMin, gap.gap,
                                    kSemigroupGapMin, CheckResult::Cmp::at_least,
                                    std::numeric_limits<double>::quiet_NaN(), note.str()});
        continue;
      }
    }
    artifacts.checks.push_back({to_string(check), worst.value <= kCheckTol, worst.value,
                                kCheckTol, CheckResult::Cmp::at_most, worst.t, ""});
  }
  return artifacts;
}

void write_trajectory(const Trajectory& trajectory, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path.string());

  const Eigen::Index n = trajectory.rho_tilde.empty() ? 0 : trajectory.rho_tilde[0].rows();
  out << "# t";
  auto emit_block = [&out, n](const std::string& prefix) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out << '\t' << prefix << i << j << "_re\t" << prefix << i << j << "_im";
      }
    }
  };
  emit_block("rt_alpha_");
  emit_block("rt_beta_");
  emit_block("proj_");
  out << "\tre_trace\tmin_eig_projection\teta_unitarity_residual\n";

  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << fmt17(trajectory.times[k]);
    auto emit_matrix = [&out, n](const CMatrix& mat) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          out << '\t' << fmt17(mat(i, j).real()) << '\t' << fmt17(mat(i, j).imag());
        }
      }
    };
    emit_matrix(trajectory.rho_tilde[k].alpha());
    emit_matrix(trajectory.rho_tilde[k].beta());
    emit_matrix(trajectory.rho_tilde_alpha[k]);
    const Trajectory::Diagnostics& d = trajectory.diagnostics[k];
    out << '\t' << fmt17(d.re_trace) << '\t' << fmt17(d.min_eig_projection) << '\t'
        << fmt17(d.eta_unitarity_residual) << '\n';
  }
}

namespace {

void write_check_line(std::ostream& out, const CheckResult& check) {
  out << "check name=" << check.name << " status=" << (check.passed ? "pass" : "FAIL")
      << " value=" << fmt17(check.value) << " " << cmp_symbol(check.cmp)
      << " threshold=" << fmt17(check.threshold);
  if (std::isfinite(check.t_at_worst)) out << " t_at_worst=" << fmt17(check.t_at_worst);
  if (!check.note.empty()) out << " note=\"" << check.note << "\"";
  out << "\n";
}

void write_report(const std::filesystem::path& path, const std::string& command,
                  const std::vector<std::pair<std::string, std::string>>& echo,
                  std::uint64_t seed, const std::vector<CheckResult>& checks,
                  double wall_seconds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path.string());
  out << "# quatdyn report\n";
  out << "quatdyn_version = " << kVersion << "\n";
  out << "eigen_version = " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
      << EIGEN_MINOR_VERSION << "\n";
  out << "command = " << command << "\n";
  out << "seed = " << seed << "\n";
  out << "wall_time_s = " << wall_seconds << "\n";
  for (const auto& [key, value] : echo) {
    out << "config." << key << " = " << value << "\n";
  }
  for (const CheckResult& check : checks) write_check_line(out, check);
  out << "failures = "
      << std::count_if(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return !c.passed; })
      << "\n";
}

std::filesystem::path resolve_output(const std::filesystem::path& out_dir,
                                     const std::filesystem::path& file) {
  const std::filesystem::path full = file.is_absolute() ? file : out_dir / file;
  if (full.has_parent_path()) std::filesystem::create_directories(full.parent_path());
  return full;
}

}  // namespace

int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunArtifacts artifacts = execute_run(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();

  const std::filesystem::path traj_path = resolve_output(out_dir, cfg.outputs.trajectory);
  const std::filesystem::path report_path = resolve_output(out_dir, cfg.outputs.report);
  write_trajectory(artifacts.trajectory, traj_path);
  write_report(report_path, "run", cfg.echo, cfg.seed, artifacts.checks, wall);

  for (const CheckResult& check : artifacts.checks) write_check_line(log, check);
  log << "trajectory: " << traj_path.string() << "\n";
  log << "report: " << report_path.string() << "\n";
  return all_passed(artifacts.checks) ? 0 : 1;
}

int cmd_verify(const VerifyConfig& cfg, const std::filesystem::path& out_dir,
               std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results =
      run_bundle(cfg.bundle, {.seed = cfg.seed, .step = cfg.step});
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();

  for (const CheckResult& check : results) write_check_line(log, check);
  if (!cfg.report.empty()) {
    const std::filesystem::path report_path = resolve_output(out_dir, cfg.report);
    write_report(report_path, "verify " + cfg.bundle, {{"bundle", cfg.bundle}}, cfg.seed,
                 results, wall);
    log << "report: " << report_path.string() << "\n";
  }
  const bool ok = all_passed(results);
  log << "bundle " << cfg.bundle << ": " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  if (cfg.sweep.empty()) {
    throw std::invalid_argument("sweep: empty grid (no sweep.* keys in the config)");
  }
  if (cfg.outputs.trajectory.is_absolute() || cfg.outputs.report.is_absolute()) {
    throw std::invalid_argument("sweep: output paths must be relative (one copy per run)");
  }
  // Cartesian product over the fixed axis order.
  const std::vector<std::string> axes{"x", "y", "z_re", "z_im", "theta"};
  std::vector<std::pair<std::string, std::vector<double>>> grid;
  for (const std::string& axis : axes) {
    const auto it = cfg.sweep.find(axis);
    if (it != cfg.sweep.end()) grid.emplace_back(axis, it->second);
  }

  std::size_t total = 1;
  for (const auto& [axis, values] : grid) total *= values.size();

  std::filesystem::create_directories(out_dir);
  std::ofstream index(out_dir / "index.tsv");
  if (!index) throw std::runtime_error("cannot write sweep index");
  index << "# run\tx\ty\tz_re\tz_im\ttheta\tstatus\ttrajectory\treport\n";

  int exit_code = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    RunConfig point = cfg;
    point.sweep.clear();
    std::size_t rest = flat;
    for (const auto& [axis, values] : grid) {
      const double value = values[rest % values.size()];
      rest /= values.size();
      sec4::Params& p = point.scenario.sec4_params;
      if (axis == "x") p.x = value;
      else if (axis == "y") p.y = value;
      else if (axis == "z_re") p.z = Complex(value, p.z.imag());
      else if (axis == "z_im") p.z = Complex(p.z.real(), value);
      else p.theta = value;
    }

    char run_id[16];
    std::snprintf(run_id, sizeof(run_id), "run_%03zu", flat);
    const sec4::Params& p = point.scenario.sec4_params;
    index << run_id << '\t' << fmt17(p.x) << '\t' << fmt17(p.y) << '\t' << fmt17(p.z.real())
          << '\t' << fmt17(p.z.imag()) << '\t' << fmt17(p.theta) << '\t';

    try {
      sec4::validate(p);
    } catch (const std::invalid_argument& err) {
      index << "skipped: " << err.what() << "\t-\t-\n";
      log << run_id << ": skipped (" << err.what() << ")\n";
      continue;
    }

    const std::filesystem::path run_dir = out_dir / run_id;
    const int code = cmd_run(point, run_dir, log);
    exit_code = std::max(exit_code, code);
    index << (code == 0 ? "ok" : "check-failures") << '\t'
          << (run_dir / point.outputs.trajectory).string() << '\t'
          << (run_dir / point.outputs.report).string() << "\n";
  }
  log << "sweep index: " << (out_dir / "index.tsv").string() << "\n";
  return exit_code;
}

}  // namespace quatdyn
