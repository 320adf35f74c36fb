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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace probrep {

/// A single experiment invocation. Parameter values arrive as strings and are
/// parsed against the registry's per-experiment declarations; unknown keys
/// are rejected. Randomized experiments require a seed.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> parameters;
  std::string output_path;  // empty writes to stdout
  enum class Format { kCsv, kJson };
  Format format = Format::kCsv;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Typed table cell. Rationals are carried as their exact "p/q" string.
using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Column {
  enum class Type { kInt, kReal, kRational, kBool, kString };
  std::string name;
  Type type;
};

/// Rectangular, typed result table. The effective config (defaults filled in)
/// is embedded so a run can be reproduced from its output; wall time is kept
/// in memory only, since identical config + seed must give byte-identical
/// files.
struct ResultTable {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::string version;
  nlohmann::json config_echo;
  double wall_seconds = 0.0;
};

/// Names of all registered experiments.
std::vector<std::string> registry_names();

/// Empty iff `run` would accept the config.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Dispatches to the owning module. Throws ValidationError on a config
/// problem, std::runtime_error on an execution failure.
ResultTable run(const ExperimentConfig& config);

/// Runs and writes the output file (atomically: temp file + rename) or
/// stdout when no path is configured.
ResultTable run_and_write(const ExperimentConfig& config);

std::string format_csv(const ResultTable& table);
nlohmann::json format_json(const ResultTable& table);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Recovers the embedded config from a written CSV or JSON output.
ExperimentConfig embedded_config(std::istream& in);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace probrep
