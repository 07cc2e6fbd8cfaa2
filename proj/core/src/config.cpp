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

#include "quatdyn/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace quatdyn {

namespace {

std::string join_messages(const std::vector<std::string>& messages) {
  std::ostringstream out;
  out << "config error";
  if (messages.size() > 1) out << "s";
  out << ":";
  for (const std::string& m : messages) out << "\n  " << m;
  return out.str();
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

/// Raw key/value pairs in file order, with duplicate detection.
class KeyValueFile {
 public:
  KeyValueFile(const std::filesystem::path& path, std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
      errors.push_back("cannot open config file: " + path.string());
      return;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto comment = line.find('#');
      if (comment != std::string::npos) line.erase(comment);
      const std::string text = trim(line);
      if (text.empty()) continue;
      const auto eq = text.find('=');
      if (eq == std::string::npos) {
        errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
        continue;
      }
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (key.empty()) {
        errors.push_back("line " + std::to_string(line_no) + ": empty key");
        continue;
      }
      if (values_.count(key) != 0) {
        errors.push_back(key + ": duplicate key");
        continue;
      }
      values_[key] = value;
      order_.emplace_back(key, value);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second;
  }

  /// Every key never handed out via take() is unknown.
  std::vector<std::string> unconsumed() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : order_) {
      if (consumed_.count(key) == 0) out.push_back(key);
    }
    return out;
  }

  const std::vector<std::pair<std::string, std::string>>& in_order() const { return order_; }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::vector<std::pair<std::string, std::string>> order_;
};

class Schema {
 public:
  Schema(KeyValueFile& file, std::vector<std::string>& errors)
      : file_(file), errors_(errors) {}

  std::optional<double> number(const std::string& key) {
    const auto raw = file_.take(key);
    if (!raw) return std::nullopt;
    try {
      std::size_t used = 0;
      const double value = std::stod(*raw, &used);
      if (used != raw->size()) throw std::invalid_argument("trailing characters");
      return value;
    } catch (const std::exception&) {
      errors_.push_back(key + ": not a number: '" + *raw + "'");
      return std::nullopt;
    }
  }

  std::optional<std::vector<double>> number_list(const std::string& key) {
    const auto raw = file_.take(key);
    if (!raw) return std::nullopt;
    std::vector<double> out;
    std::istringstream stream(*raw);
    std::string token;
    while (stream >> token) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        errors_.push_back(key + ": not a number: '" + token + "'");
        return std::nullopt;
      }
    }
    return out;
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const auto raw = file_.take(key);
    if (!raw) return std::nullopt;
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(raw->data(), raw->data() + raw->size(), value);
    if (ec != std::errc() || ptr != raw->data() + raw->size()) {
      errors_.push_back(key + ": not an integer: '" + *raw + "'");
      return std::nullopt;
    }
    return value;
  }

  std::optional<std::string> text(const std::string& key) { return file_.take(key); }

  void require(const std::string& key, bool present) {
    if (!present) errors_.push_back(key + ": required key is missing");
  }

 private:
  KeyValueFile& file_;
  std::vector<std::string>& errors_;
};

void finish(KeyValueFile& file, std::vector<std::string>& errors) {
  for (const std::string& key : file.unconsumed()) {
    errors.push_back(key + ": unknown key");
  }
  if (!errors.empty()) throw ConfigError(errors);
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"x", "y", "z_re", "z_im", "theta"};
  return axes;
}

}  // namespace

ConfigError::ConfigError(const std::vector<std::string>& messages)
    : std::runtime_error(join_messages(messages)), messages_(messages) {}

std::string to_string(Check check) {
  switch (check) {
    case Check::trace: return "trace";
    case Check::unitarity: return "unitarity";
    case Check::positivity: return "positivity";
    case Check::pseudo_hermiticity: return "pseudo_hermiticity";
    case Check::semigroup: return "semigroup";
    case Check::property_i: return "property_i";
    case Check::property_ii: return "property_ii";
  }
  return "?";
}

std::optional<Check> check_from_string(const std::string& name) {
  for (Check c : {Check::trace, Check::unitarity, Check::positivity,
                  Check::pseudo_hermiticity, Check::semigroup, Check::property_i,
                  Check::property_ii}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

RunConfig parse_run_config(const std::filesystem::path& path) {
  std::vector<std::string> errors;
  KeyValueFile file(path, errors);
  if (!errors.empty()) throw ConfigError(errors);
  Schema schema(file, errors);
  RunConfig cfg;
  cfg.echo = file.in_order();

  const auto name = schema.text("scenario.name");
  schema.require("scenario.name", name.has_value());
  cfg.scenario.name = name.value_or("");

  if (cfg.scenario.name == "sec4") {
    sec4::Params& p = cfg.scenario.sec4_params;
    if (const auto v = schema.number("scenario.x")) p.x = *v;
    if (const auto v = schema.number("scenario.y")) p.y = *v;
    const auto z_re = schema.number("scenario.z_re");
    const auto z_im = schema.number("scenario.z_im");
    p.z = Complex(z_re.value_or(0.0), z_im.value_or(0.0));
    if (const auto v = schema.number("scenario.theta")) p.theta = *v;
    if (std::abs(p.discriminant()) < 1e-8) {
      errors.push_back("scenario: degenerate metric (xy = |z|^2)");
    }
    cfg.scenario.dim = 2;
  } else if (cfg.scenario.name == "inline") {
    const auto dim = schema.integer("scenario.n");
    schema.require("scenario.n", dim.has_value());
    if (dim && (*dim < 1 || *dim > 64)) {
      errors.push_back("scenario.n: must be between 1 and 64");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(dim.value_or(0));
    cfg.scenario.dim = n;

    const auto alpha_list = schema.number_list("scenario.eta_alpha");
    schema.require("scenario.eta_alpha", alpha_list.has_value() || n <= 0);
    const auto beta_list = schema.number_list("scenario.eta_beta");
    if (n > 0 && alpha_list) {
      const std::size_t expected = static_cast<std::size_t>(2 * n * n);
      auto to_matrix = [&](const std::vector<double>& flat, const char* key,
                           CMatrix& out) -> bool {
        if (flat.size() != expected) {
          errors.push_back(std::string(key) + ": expected " + std::to_string(expected) +
                           " numbers (row-major re/im pairs), got " +
                           std::to_string(flat.size()));
          return false;
        }
        out.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
          for (Eigen::Index j = 0; j < n; ++j) {
            const std::size_t k = 2 * static_cast<std::size_t>(i * n + j);
            out(i, j) = Complex(flat[k], flat[k + 1]);
          }
        }
        return true;
      };
      CMatrix alpha = CMatrix::Zero(n, n);
      CMatrix beta = CMatrix::Zero(n, n);
      bool shapes_ok = to_matrix(*alpha_list, "scenario.eta_alpha", alpha);
      if (beta_list) shapes_ok &= to_matrix(*beta_list, "scenario.eta_beta", beta);
      if (shapes_ok) cfg.scenario.eta = QMatrix(std::move(alpha), std::move(beta));

      const auto rho_alpha_list = schema.number_list("scenario.rho0_alpha");
      const auto rho_beta_list = schema.number_list("scenario.rho0_beta");
      if (rho_alpha_list || rho_beta_list) {
        CMatrix rho_alpha = CMatrix::Zero(n, n);
        CMatrix rho_beta = CMatrix::Zero(n, n);
        bool rho_ok = true;
        if (rho_alpha_list) {
          rho_ok &= to_matrix(*rho_alpha_list, "scenario.rho0_alpha", rho_alpha);
        } else {
          errors.push_back("scenario.rho0_beta: requires scenario.rho0_alpha");
          rho_ok = false;
        }
        if (rho_beta_list) rho_ok &= to_matrix(*rho_beta_list, "scenario.rho0_beta", rho_beta);
        if (rho_ok) cfg.scenario.rho0 = QMatrix(std::move(rho_alpha), std::move(rho_beta));
      }
    }

    const auto kind = schema.text("generator.kind");
    schema.require("generator.kind", kind.has_value());
    cfg.scenario.generator_kind = kind.value_or("");
    if (kind && *kind != "frak_h" && *kind != "f") {
      errors.push_back("generator.kind: must be 'frak_h' or 'f', got '" + *kind + "'");
    }
    const auto samples = schema.text("generator.samples_file");
    schema.require("generator.samples_file", samples.has_value());
    if (samples) {
      std::filesystem::path sample_path(*samples);
      if (sample_path.is_relative()) sample_path = path.parent_path() / sample_path;
      cfg.scenario.samples_file = sample_path;
    }
  } else if (name) {
    errors.push_back("scenario.name: unknown scenario '" + *name + "'");
  }

  const auto t_start = schema.number("time.t_start");
  const auto t_end = schema.number("time.t_end");
  const auto n_samples = schema.integer("time.n_samples");
  schema.require("time.t_start", t_start.has_value());
  schema.require("time.t_end", t_end.has_value());
  schema.require("time.n_samples", n_samples.has_value());
  cfg.time.t_start = t_start.value_or(0.0);
  cfg.time.t_end = t_end.value_or(0.0);
  cfg.time.n_samples = static_cast<int>(n_samples.value_or(0));
  if (t_start && t_end && !(*t_start < *t_end)) {
    errors.push_back("time: t_start must be < t_end");
  }
  if (n_samples && *n_samples < 2) {
    errors.push_back("time.n_samples: need at least 2 samples");
  }
  if (const auto step = schema.number("time.step")) {
    cfg.time.step = *step;
    if (!(*step > 0.0)) errors.push_back("time.step: must be > 0");
  }

  const auto trajectory = schema.text("outputs.trajectory");
  const auto report = schema.text("outputs.report");
  schema.require("outputs.trajectory", trajectory.has_value());
  schema.require("outputs.report", report.has_value());
  cfg.outputs.trajectory = trajectory.value_or("trajectory.tsv");
  cfg.outputs.report = report.value_or("report.txt");

  if (const auto checks = schema.text("checks")) {
    cfg.checks_explicit = true;
    std::string token;
    std::istringstream stream(*checks);
    while (std::getline(stream, token, ',')) {
      const std::string name_trimmed = trim(token);
      if (name_trimmed.empty()) continue;
      if (const auto check = check_from_string(name_trimmed)) {
        cfg.checks.push_back(*check);
      } else {
        errors.push_back("checks: unknown check '" + name_trimmed + "'");
      }
    }
  }

  if (const auto seed = schema.integer("seed")) {
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }

  for (const std::string& axis : sweep_axes()) {
    if (const auto values = schema.number_list("sweep." + axis)) {
      if (values->empty()) {
        errors.push_back("sweep." + axis + ": empty value list");
      } else {
        cfg.sweep[axis] = *values;
      }
    }
  }
  if (!cfg.sweep.empty() && cfg.scenario.name != "sec4") {
    errors.push_back("sweep: only sec4 scenarios can be swept");
  }

  finish(file, errors);
  return cfg;
}

VerifyConfig parse_verify_config(const std::filesystem::path& path) {
  std::vector<std::string> errors;
  KeyValueFile file(path, errors);
  if (!errors.empty()) throw ConfigError(errors);
  Schema schema(file, errors);
  VerifyConfig cfg;

  const auto bundle = schema.text("bundle");
  schema.require("bundle", bundle.has_value());
  cfg.bundle = bundle.value_or("");

  if (const auto seed = schema.integer("seed")) cfg.seed = static_cast<std::uint64_t>(*seed);
  if (const auto step = schema.number("time.step")) {
    cfg.step = *step;
    if (!(*step > 0.0)) errors.push_back("time.step: must be > 0");
  }
  if (const auto report = schema.text("outputs.report")) cfg.report = *report;

  finish(file, errors);
  return cfg;
}

std::pair<std::vector<double>, std::vector<QMatrix>> load_sample_table(
    const std::filesystem::path& path, Eigen::Index dim) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open sample table: " + path.string());
  }
  const std::size_t per_block = static_cast<std::size_t>(2 * dim * dim);
  std::vector<double> times;
  std::vector<QMatrix> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream stream(line);
    std::vector<double> row;
    double value = 0.0;
    while (stream >> value) row.push_back(value);
    if (row.empty()) continue;
    if (row.size() != 1 + 2 * per_block) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected " << 1 + 2 * per_block
          << " columns (t, alpha re/im, beta re/im), got " << row.size();
      throw std::runtime_error(msg.str());
    }
    times.push_back(row[0]);
    CMatrix alpha(dim, dim), beta(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::size_t k = 1 + 2 * static_cast<std::size_t>(i * dim + j);
        alpha(i, j) = Complex(row[k], row[k + 1]);
        beta(i, j) = Complex(row[k + per_block], row[k + per_block + 1]);
      }
    }
    values.emplace_back(std::move(alpha), std::move(beta));
  }
  if (times.size() < 2) {
    throw std::runtime_error(path.string() + ": need at least two sample rows");
  }
  return {std::move(times), std::move(values)};
}

}  // namespace quatdyn
