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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "probrep/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct CliOptions {
  std::string experiment;
  std::vector<std::string> params;
  std::string config_path;
  std::string out_path;
  std::string format;
};

void add_common_options(CLI::App* cmd, CliOptions& options) {
  cmd->add_option("--experiment", options.experiment, "Experiment name (see `list`)");
  cmd->add_option("--param", options.params, "Parameter as key=value (repeatable)");
  cmd->add_option("--config", options.config_path, "JSON config file; command-line values override");
  cmd->add_option("--out", options.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--format", options.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int build_config(const CliOptions& options, probrep::ExperimentConfig& config) {
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path);
    if (!in) {
      std::cerr << "error: cannot open config file " << options.config_path << "\n";
      return kExitValidation;
    }
    nlohmann::json j;
    try {
      in >> j;
      config = probrep::config_from_json(j);
    } catch (const std::exception& e) {
      std::cerr << "error: bad config file: " << e.what() << "\n";
      return kExitValidation;
    }
  }
  if (!options.experiment.empty()) config.experiment = options.experiment;
  for (const auto& raw : options.params) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --param expects key=value, got '" << raw << "'\n";
      return kExitValidation;
    }
    config.parameters[raw.substr(0, eq)] = raw.substr(eq + 1);
  }
  if (!options.out_path.empty()) config.output_path = options.out_path;
  if (!options.format.empty()) {
    config.format = options.format == "json" ? probrep::ExperimentConfig::Format::kJson
                                             : probrep::ExperimentConfig::Format::kCsv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probrep: probability-representation experiments"};
  app.require_subcommand(1);

  CliOptions options;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment and emit its result table");
  add_common_options(run_cmd, options);
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  add_common_options(validate_cmd, options);
  CLI::App* list_cmd = app.add_subcommand("list", "Print the experiment registry");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const auto& name : probrep::registry_names()) std::cout << name << "\n";
    return 0;
  }

  probrep::ExperimentConfig config;
  if (const int code = build_config(options, config); code != 0) return code;

  if (validate_cmd->parsed()) {
    const auto problems = probrep::validate(config);
    for (const auto& p : problems) std::cout << p << "\n";
    return problems.empty() ? 0 : kExitValidation;
  }

  try {
    const probrep::ResultTable table = probrep::run_and_write(config);
    std::cerr << "# " << config.experiment << " finished in " << table.wall_seconds << " s\n";
    return 0;
  } catch (const probrep::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
