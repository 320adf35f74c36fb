// Copyright 2026 The probrep developers
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

#include "probrep/experiments.hpp"

#include <charconv>
#include <set>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "probrep/antisymmetric.hpp"
#include "probrep/keylock.hpp"
#include "probrep/metrics.hpp"
#include "probrep/nets.hpp"
#include "probrep/random.hpp"
#include "probrep/scrambling.hpp"
#include "probrep/spectral.hpp"

namespace probrep {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

namespace {

// ---------------------------------------------------------------------------
// Parameter declarations and parsing.

struct ParamSpec {
  enum class Type { kInt, kReal, kSeed, kString };
  std::string name;
  Type type;
  bool required = false;
  double min = 0.0;
  double max = 0.0;
  std::string default_value;  // empty means no default
};

struct ParsedParams {
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, double> reals;
  std::map<std::string, std::uint64_t> seeds;
  std::map<std::string, std::string> strings;

  std::int64_t integer(const std::string& name) const { return ints.at(name); }
  double real(const std::string& name) const { return reals.at(name); }
  std::uint64_t seed(const std::string& name = "seed") const { return seeds.at(name); }
  bool has(const std::string& name) const {
    return ints.count(name) || reals.count(name) || seeds.count(name) || strings.count(name);
  }
};

struct ExperimentSpec {
  std::string name;
  std::vector<ParamSpec> params;
  std::function<ResultTable(const ParsedParams&)> runner;
};

ParamSpec int_param(std::string name, bool required, double min, double max,
                    std::string default_value = {}) {
  return {std::move(name), ParamSpec::Type::kInt, required, min, max, std::move(default_value)};
}
ParamSpec real_param(std::string name, bool required, double min, double max,
                     std::string default_value = {}) {
  return {std::move(name), ParamSpec::Type::kReal, required, min, max, std::move(default_value)};
}
ParamSpec seed_param() { return {"seed", ParamSpec::Type::kSeed, true, 0, 0, {}}; }
ParamSpec string_param(std::string name) {
  return {std::move(name), ParamSpec::Type::kString, false, 0, 0, {}};
}
ParamSpec tolerance_param() { return real_param("tolerance", false, 1e-15, 1e-3); }

void parse_one(const ParamSpec& spec, const std::string& raw, ParsedParams& out,
               std::vector<std::string>& problems) {
  const std::string where = "parameter '" + spec.name + "'";
  switch (spec.type) {
    case ParamSpec::Type::kInt: {
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
      if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        problems.push_back(where + ": not an integer: '" + raw + "'");
        return;
      }
      if (value < static_cast<std::int64_t>(spec.min) || value > static_cast<std::int64_t>(spec.max)) {
        problems.push_back(where + ": value " + raw + " outside [" +
                           std::to_string(static_cast<std::int64_t>(spec.min)) + ", " +
                           std::to_string(static_cast<std::int64_t>(spec.max)) + "]");
        return;
      }
      out.ints[spec.name] = value;
      return;
    }
    case ParamSpec::Type::kReal: {
      try {
        std::size_t pos = 0;
        const double value = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        if (value < spec.min || value > spec.max) {
          problems.push_back(where + ": value " + raw + " outside range");
          return;
        }
        out.reals[spec.name] = value;
      } catch (const std::exception&) {
        problems.push_back(where + ": not a real number: '" + raw + "'");
      }
      return;
    }
    case ParamSpec::Type::kSeed: {
      std::uint64_t value = 0;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
      if (ec != std::errc() || ptr != raw.data() + raw.size()) {
        problems.push_back(where + ": not an unsigned integer: '" + raw + "'");
        return;
      }
      out.seeds[spec.name] = value;
      return;
    }
    case ParamSpec::Type::kString:
      out.strings[spec.name] = raw;
      return;
  }
}

// ---------------------------------------------------------------------------
// Table building helpers.

Cell rational_cell(const Rational& r) { return Cell(rational_to_string(r)); }

// ---------------------------------------------------------------------------
// Experiment runners.

ResultTable run_antisym(const ParsedParams& p) {
  const int n_max = static_cast<int>(p.integer("n_max"));
  const int samples = static_cast<int>(p.integer("samples"));
  const bool with_delta = n_max <= 3;
  const auto rows = robustness_gap_table(n_max, p.seed(), with_delta ? n_max : 0, samples);

  ResultTable table;
  table.columns = {{"n", Column::Type::kInt},
                   {"d_product", Column::Type::kReal},
                   {"gap", Column::Type::kReal}};
  if (with_delta) {
    table.columns.push_back({"delta", Column::Type::kReal});
    table.columns.push_back({"delta_converged", Column::Type::kBool});
  }
  for (const auto& row : rows) {
    std::vector<Cell> cells{Cell(static_cast<std::int64_t>(row.n)),
                            Cell(row.d_product_lower_bound), Cell(row.gap)};
    if (with_delta) {
      cells.emplace_back(row.delta_floor->value);
      cells.emplace_back(row.delta_floor->converged);
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

ResultTable run_airplane(const ParsedParams& p) {
  const int n = static_cast<int>(p.integer("n"));
  const AirplaneScan scan = airplane_scan(n);
  const bool holds = scan.min >= Rational(2, 11);

  ResultTable table;
  table.columns = {{"n", Column::Type::kInt},          {"min", Column::Type::kRational},
                   {"min_double", Column::Type::kReal}, {"min_half", Column::Type::kReal},
                   {"argmin", Column::Type::kInt},      {"argmin_over_n", Column::Type::kReal},
                   {"bound_holds", Column::Type::kBool}};
  table.rows.push_back({Cell(static_cast<std::int64_t>(n)), rational_cell(scan.min),
                        Cell(scan.min_as_double()), Cell(0.5 * scan.min_as_double()),
                        Cell(static_cast<std::int64_t>(scan.argmin)),
                        Cell(static_cast<double>(scan.argmin) / n), Cell(holds)});
  return table;
}

ResultTable run_scramble(const ParsedParams& p) {
  const int n = static_cast<int>(p.integer("n"));
  const int net_size = static_cast<int>(p.integer("samples"));
  const int max_tries = static_cast<int>(p.integer("max_tries"));
  const std::uint64_t seed = p.seed();
  const auto net = random_product_net(n, net_size, derive_seed(seed, 0xAE7));
  const ScrambleReport report = scramble_search(n, net, max_tries, seed);

  ResultTable table;
  table.columns = {{"n", Column::Type::kInt},           {"dim", Column::Type::kInt},
                   {"net_size", Column::Type::kInt},    {"tries", Column::Type::kInt},
                   {"found", Column::Type::kBool},      {"unitary_seed", Column::Type::kString},
                   {"max_ratio", Column::Type::kReal},  {"delta_n", Column::Type::kReal},
                   {"d_bound", Column::Type::kReal}};
  table.rows.push_back({Cell(static_cast<std::int64_t>(report.n)),
                        Cell(static_cast<std::int64_t>(report.dim)),
                        Cell(static_cast<std::int64_t>(net.size())),
                        Cell(static_cast<std::int64_t>(report.tries)), Cell(report.found),
                        Cell(std::to_string(report.unitary_seed)), Cell(report.max_ratio),
                        Cell(delta_n(n, net.size())), Cell(report.d_bound)});
  return table;
}

ResultTable run_nets(const ParsedParams& p) {
  const int dim = static_cast<int>(p.integer("dim"));
  const double epsilon = p.real("epsilon");
  const StateNet net = build_net(dim, epsilon, p.seed());
  if (p.strings.count("out_net")) save_net(net, p.strings.at("out_net"));

  ResultTable table;
  table.columns = {{"dim", Column::Type::kInt},
                   {"epsilon", Column::Type::kReal},
                   {"size", Column::Type::kInt},
                   {"size_log2", Column::Type::kReal},
                   {"size_bound_log2", Column::Type::kReal},
                   {"certificate", Column::Type::kBool},
                   {"exceeds_bound", Column::Type::kBool}};
  table.rows.push_back({Cell(static_cast<std::int64_t>(dim)), Cell(epsilon),
                        Cell(static_cast<std::int64_t>(net.size())),
                        Cell(std::log2(static_cast<double>(net.size()))),
                        Cell(net_size_bound_log2(dim, epsilon)), Cell(net.certificate_passed()),
                        Cell(net.exceeds_size_bound())});
  return table;
}

ResultTable run_keylock(const ParsedParams& p) {
  const int n = static_cast<int>(p.integer("n"));
  const bool with_product = n <= 12;

  ResultTable table;
  table.columns = {{"n", Column::Type::kInt}, {"adaptive", Column::Type::kRational}};
  if (with_product) table.columns.push_back({"product", Column::Type::kRational});

  std::vector<Cell> cells{Cell(static_cast<std::int64_t>(n)),
                          rational_cell(keylock::adaptive_distance(n))};
  if (with_product) cells.push_back(rational_cell(keylock::product_family_distance(n)));
  table.rows.push_back(std::move(cells));
  return table;
}

ResultTable run_damped(const ParsedParams& p) {
  const int dim = static_cast<int>(p.integer("dim"));
  const auto rows = damped_family_demo(dim);

  ResultTable table;
  table.columns = {{"n", Column::Type::kInt},
                   {"d_damped", Column::Type::kReal},
                   {"delta", Column::Type::kReal},
                   {"formula", Column::Type::kReal}};
  for (const auto& row : rows) {
    const double formula = row.n == 0 ? 0.0 : std::exp(-2.0 * row.n);
    table.rows.push_back({Cell(static_cast<std::int64_t>(row.n)), Cell(row.d_damped),
                          Cell(row.delta), Cell(formula)});
  }
  return table;
}

ResultTable run_witness(const ParsedParams& p) {
  const int dim = static_cast<int>(p.integer("dim"));
  const int count = static_cast<int>(p.integer("count"));
  const std::uint64_t seed = p.seed();

  double max_error = 0.0;
  double max_delta_deviation = 0.0;
  bool all_valid = true;
  for (int i = 0; i < count; ++i) {
    const TracelessWitness witness = random_traceless_witness(dim, derive_seed(seed, i));
    const auto [rho, sigma] = witness_pair(witness, dim, dim + 1);
    Matrix embedded = Matrix::Zero(dim + 1, dim + 1);
    embedded.topLeftCorner(dim, dim) = witness.op().matrix();
    const double error =
        trace_norm(Matrix(rho.matrix() - sigma.matrix() - embedded));
    max_error = std::max(max_error, error);
    const double delta_dev = std::abs(trace_distance(rho, sigma) -
                                      0.5 * trace_norm(witness.op()));
    max_delta_deviation = std::max(max_delta_deviation, delta_dev);
    all_valid = all_valid && error <= tolerances().constraint;
  }

  ResultTable table;
  table.columns = {{"dim", Column::Type::kInt},
                   {"count", Column::Type::kInt},
                   {"max_reconstruction_error", Column::Type::kReal},
                   {"max_delta_deviation", Column::Type::kReal},
                   {"all_valid", Column::Type::kBool}};
  table.rows.push_back({Cell(static_cast<std::int64_t>(dim)),
                        Cell(static_cast<std::int64_t>(count)), Cell(max_error),
                        Cell(max_delta_deviation), Cell(all_valid)});
  return table;
}

ResultTable run_tomography(const ParsedParams& p) {
  const int bases = static_cast<int>(p.integer("bases"));
  const int pairs = static_cast<int>(p.integer("pairs"));
  const std::uint64_t seed = p.seed();

  const MeasurementFamily grid = qubit_projective_grid(bases);
  double worst_ratio = 1.0;
  double mean_ratio = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const DensityMatrix rho = random_density(2, derive_seed(seed, 2 * i));
    const DensityMatrix sigma = random_density(2, derive_seed(seed, 2 * i + 1));
    const double delta = trace_distance(rho, sigma);
    if (delta < 1e-9) continue;
    const double ratio = d_m(rho, sigma, grid) / delta;
    worst_ratio = std::min(worst_ratio, ratio);
    mean_ratio += ratio;
  }
  mean_ratio /= pairs;

  ResultTable table;
  table.columns = {{"bases", Column::Type::kInt},
                   {"pairs", Column::Type::kInt},
                   {"worst_ratio", Column::Type::kReal},
                   {"mean_ratio", Column::Type::kReal},
                   {"within_2_percent", Column::Type::kBool}};
  table.rows.push_back({Cell(static_cast<std::int64_t>(bases)),
                        Cell(static_cast<std::int64_t>(pairs)), Cell(worst_ratio),
                        Cell(mean_ratio), Cell(worst_ratio >= 0.98)});
  return table;
}

const std::vector<ExperimentSpec>& registry() {
  static const std::vector<ExperimentSpec> specs = {
      {"antisym",
       {int_param("n_max", true, 1, 5), seed_param(), int_param("samples", false, 1, 1000000, "200"),
        tolerance_param()},
       run_antisym},
      {"airplane", {int_param("n", true, 1, 4096), tolerance_param()}, run_airplane},
      {"scramble",
       {int_param("n", true, 1, 8), seed_param(), int_param("samples", false, 0, 4096, "50"),
        int_param("max_tries", false, 1, 100000, "100"), tolerance_param()},
       run_scramble},
      {"nets",
       {int_param("dim", true, 1, 64), real_param("epsilon", true, 0.05, 2.0), seed_param(),
        string_param("out_net"), tolerance_param()},
       run_nets},
      {"keylock", {int_param("n", true, 1, 16), tolerance_param()}, run_keylock},
      {"damped", {int_param("dim", true, 2, 1024), tolerance_param()}, run_damped},
      {"witness",
       {int_param("dim", false, 2, 16, "8"), int_param("count", false, 1, 100000, "1000"),
        seed_param(), tolerance_param()},
       run_witness},
      {"tomography",
       {int_param("bases", false, 1, 100000, "1000"), int_param("pairs", false, 1, 100000, "100"),
        seed_param(), tolerance_param()},
       run_tomography},
  };
  return specs;
}

const ExperimentSpec* find_experiment(const std::string& name) {
  for (const auto& spec : registry()) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::vector<std::string> validate_and_parse(const ExperimentConfig& config, ParsedParams& out) {
  std::vector<std::string> problems;
  const ExperimentSpec* spec = find_experiment(config.experiment);
  if (spec == nullptr) {
    problems.push_back("unknown experiment '" + config.experiment + "'");
    return problems;
  }
  std::set<std::string> provided;
  for (const auto& [key, value] : config.parameters) {
    const ParamSpec* param = nullptr;
    for (const auto& candidate : spec->params) {
      if (candidate.name == key) {
        param = &candidate;
        break;
      }
    }
    if (param == nullptr) {
      problems.push_back("unknown parameter '" + key + "' for experiment '" + config.experiment +
                         "'");
      continue;
    }
    provided.insert(key);
    parse_one(*param, value, out, problems);
  }
  for (const auto& param : spec->params) {
    if (provided.contains(param.name)) continue;
    if (!param.default_value.empty()) {
      parse_one(param, param.default_value, out, problems);
    } else if (param.required) {
      problems.push_back("missing required parameter '" + param.name + "'");
    }
  }
  return problems;
}

std::string cell_to_string(const Cell& cell, Column::Type type) {
  switch (cell.index()) {
    case 0:
      return std::to_string(std::get<std::int64_t>(cell));
    case 1:
      return format_double(std::get<double>(cell));
    case 2:
      return std::get<bool>(cell) ? "true" : "false";
    case 3:
      return std::get<std::string>(cell);
  }
  (void)type;
  throw std::logic_error("cell_to_string: bad cell");
}

}  // namespace

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (const auto& spec : registry()) names.push_back(spec.name);
  return names;
}

std::vector<std::string> validate(const ExperimentConfig& config) {
  ParsedParams parsed;
  return validate_and_parse(config, parsed);
}

ResultTable run(const ExperimentConfig& config) {
  ParsedParams parsed;
  std::vector<std::string> problems = validate_and_parse(config, parsed);
  if (!problems.empty()) {
    std::string message = "invalid config:";
    for (const auto& p : problems) message += "\n  - " + p;
    throw ValidationError(message);
  }

  const Tolerances saved = tolerances();
  if (parsed.reals.count("tolerance")) tolerances().assertion = parsed.reals.at("tolerance");

  const auto start = std::chrono::steady_clock::now();
  ResultTable table;
  try {
    table = find_experiment(config.experiment)->runner(parsed);
  } catch (...) {
    tolerances() = saved;
    throw;
  }
  tolerances() = saved;

  table.version = PROBREP_VERSION;
  // Echo the effective config (defaults materialized) so the table can be
  // reproduced from its own metadata. The output path is where the table
  // landed, not what it contains, and is left out so identical runs stay
  // byte-identical wherever they are written.
  ExperimentConfig effective = config;
  effective.output_path.clear();
  for (const auto& [k, v] : parsed.ints) {
    if (!effective.parameters.count(k)) effective.parameters[k] = std::to_string(v);
  }
  for (const auto& [k, v] : parsed.reals) {
    if (!effective.parameters.count(k)) effective.parameters[k] = format_double(v);
  }
  for (const auto& [k, v] : parsed.seeds) {
    if (!effective.parameters.count(k)) effective.parameters[k] = std::to_string(v);
  }
  table.config_echo = config_to_json(effective);
  table.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

std::string format_csv(const ResultTable& table) {
  std::ostringstream out;
  out << "# probrep-version: " << table.version << "\n";
  out << "# config: " << table.config_echo.dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i].name;
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << cell_to_string(row[i], table.columns[i].type);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json format_json(const ResultTable& table) {
  nlohmann::json j;
  j["version"] = table.version;
  j["config"] = table.config_echo;
  nlohmann::json columns = nlohmann::json::array();
  for (const auto& column : table.columns) {
    const char* type = nullptr;
    switch (column.type) {
      case Column::Type::kInt: type = "integer"; break;
      case Column::Type::kReal: type = "real"; break;
      case Column::Type::kRational: type = "rational"; break;
      case Column::Type::kBool: type = "boolean"; break;
      case Column::Type::kString: type = "string"; break;
    }
    columns.push_back({{"name", column.name}, {"type", type}});
  }
  j["columns"] = std::move(columns);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json out_row = nlohmann::json::array();
    for (const auto& cell : row) {
      switch (cell.index()) {
        case 0: out_row.push_back(std::get<std::int64_t>(cell)); break;
        case 1: out_row.push_back(std::get<double>(cell)); break;
        case 2: out_row.push_back(std::get<bool>(cell)); break;
        case 3: out_row.push_back(std::get<std::string>(cell)); break;
      }
    }
    rows.push_back(std::move(out_row));
  }
  j["rows"] = std::move(rows);
  return j;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["experiment"] = config.experiment;
  j["parameters"] = config.parameters;
  j["format"] = config.format == ExperimentConfig::Format::kCsv ? "csv" : "json";
  if (!config.output_path.empty()) j["output_path"] = config.output_path;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.experiment = j.at("experiment").get<std::string>();
  if (j.contains("parameters")) {
    for (const auto& [key, value] : j.at("parameters").items()) {
      if (value.is_string()) config.parameters[key] = value.get<std::string>();
      else config.parameters[key] = value.dump();
    }
  }
  if (j.contains("format")) {
    const std::string format = j.at("format").get<std::string>();
    if (format == "csv") config.format = ExperimentConfig::Format::kCsv;
    else if (format == "json") config.format = ExperimentConfig::Format::kJson;
    else throw ValidationError("config: unknown format '" + format + "'");
  }
  if (j.contains("output_path")) config.output_path = j.at("output_path").get<std::string>();
  return config;
}

ExperimentConfig embedded_config(std::istream& in) {
  std::string first;
  if (!std::getline(in, first)) throw std::runtime_error("embedded_config: empty input");
  if (first.rfind("# probrep-version:", 0) == 0) {
    std::string second;
    if (!std::getline(in, second) || second.rfind("# config: ", 0) != 0) {
      throw std::runtime_error("embedded_config: missing config comment line");
    }
    return config_from_json(nlohmann::json::parse(second.substr(10)));
  }
  // JSON output: re-read the whole stream.
  std::string rest(first);
  for (std::string line; std::getline(in, line);) rest += "\n" + line;
  return config_from_json(nlohmann::json::parse(rest).at("config"));
}

ResultTable run_and_write(const ExperimentConfig& config) {
  ResultTable table = run(config);
  std::string payload;
  if (config.format == ExperimentConfig::Format::kCsv) {
    payload = format_csv(table);
  } else {
    payload = format_json(table).dump(2);
    payload += '\n';
  }
  if (config.output_path.empty()) {
    std::cout << payload;
    return table;
  }
  const std::string temp = config.output_path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + temp);
    out << payload;
    if (!out.good()) throw std::runtime_error("write failed for " + temp);
  }
  if (std::rename(temp.c_str(), config.output_path.c_str()) != 0) {
    throw std::runtime_error("cannot rename " + temp + " to " + config.output_path);
  }
  return table;
}

}  // namespace probrep
