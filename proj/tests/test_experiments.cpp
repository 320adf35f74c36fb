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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "probrep/experiments.hpp"
#include "probrep/nets.hpp"

using namespace probrep;

namespace {

ExperimentConfig make_config(const std::string& name,
                             std::map<std::string, std::string> params) {
  ExperimentConfig config;
  config.experiment = name;
  config.parameters = std::move(params);
  return config;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("registry lists every experiment") {
  const auto names = registry_names();
  for (const char* expected :
       {"antisym", "airplane", "scramble", "nets", "keylock", "damped", "witness", "tomography"}) {
    CHECK(std::count(names.begin(), names.end(), expected) == 1);
  }
}

TEST_CASE("validate: seed requirements, caps, unknown keys") {
  CHECK(validate(make_config("antisym", {{"n_max", "2"}, {"seed", "7"}})).empty());

  const auto missing_seed = validate(make_config("scramble", {{"n", "4"}}));
  REQUIRE(missing_seed.size() == 1);
  CHECK(missing_seed.front().find("seed") != std::string::npos);

  const auto cap = validate(make_config("keylock", {{"n", "40"}}));
  REQUIRE(cap.size() == 1);
  CHECK(cap.front().find("outside") != std::string::npos);

  CHECK_FALSE(validate(make_config("unknown-experiment", {})).empty());
  CHECK_FALSE(validate(make_config("airplane", {{"n", "16"}, {"bogus", "1"}})).empty());
  CHECK_FALSE(validate(make_config("airplane", {{"n", "not-a-number"}})).empty());
}

TEST_CASE("run: rejects invalid configs with a ValidationError") {
  CHECK_THROWS_AS(run(make_config("keylock", {{"n", "40"}})), ValidationError);
  CHECK_THROWS_AS(run(make_config("nope", {})), ValidationError);
}

TEST_CASE("run: keylock emits exact rational cells") {
  const ResultTable table = run(make_config("keylock", {{"n", "8"}}));
  REQUIRE(table.rows.size() == 1);
  REQUIRE(table.columns.size() == 3);
  CHECK(table.columns[1].name == "adaptive");
  CHECK(std::get<std::string>(table.rows[0][1]) == "1");
  CHECK(std::get<std::string>(table.rows[0][2]) == "1/128");
}

TEST_CASE("run: airplane row carries the exact minimum") {
  const ResultTable table = run(make_config("airplane", {{"n", "16"}}));
  REQUIRE(table.rows.size() == 1);
  CHECK(std::get<bool>(table.rows[0].back()));  // bound_holds
  const std::string rational = std::get<std::string>(table.rows[0][1]);
  CHECK(rational.find('/') != std::string::npos);
}

TEST_CASE("run: antisym table shape and gap column") {
  const ResultTable table =
      run(make_config("antisym", {{"n_max", "1"}, {"seed", "5"}, {"samples", "20"}}));
  REQUIRE(table.rows.size() == 1);
  CHECK(std::get<std::int64_t>(table.rows[0][0]) == 1);
  CHECK(std::get<double>(table.rows[0][2]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::get<double>(table.rows[0][3]) == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("same config and seed give byte-identical output") {
  const ExperimentConfig config =
      make_config("witness", {{"dim", "4"}, {"count", "50"}, {"seed", "99"}});
  const std::string a = format_csv(run(config));
  const std::string b = format_csv(run(config));
  CHECK(a == b);
  const std::string ja = format_json(run(config)).dump(2);
  const std::string jb = format_json(run(config)).dump(2);
  CHECK(ja == jb);
}

TEST_CASE("CSV shape: comments, header, LF endings, reproducible config echo") {
  const ExperimentConfig config = make_config("damped", {{"dim", "4"}});
  const ResultTable table = run(config);
  const std::string csv = format_csv(table);

  CHECK(csv.rfind("# probrep-version:", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // version comment
  std::getline(lines, line);  // config comment
  std::getline(lines, line);
  CHECK(line == "n,d_damped,delta,formula");

  // The embedded config reproduces the table.
  std::istringstream replay(csv);
  const ExperimentConfig recovered = embedded_config(replay);
  CHECK(format_csv(run(recovered)) == csv);

  // JSON route round-trips as well.
  std::istringstream json_replay(format_json(table).dump(2));
  const ExperimentConfig from_json = embedded_config(json_replay);
  CHECK(format_json(run(from_json)).dump(2) == format_json(table).dump(2));
}

TEST_CASE("run_and_write: atomic file output plus net side artifact") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "probrep_test_out";
  fs::create_directories(dir);
  const fs::path out = dir / "nets.csv";
  const fs::path net_path = dir / "net.txt";

  ExperimentConfig config = make_config(
      "nets", {{"dim", "2"}, {"epsilon", "1.0"}, {"seed", "3"}, {"out_net", net_path.string()}});
  config.output_path = out.string();
  const ResultTable table = run_and_write(config);

  REQUIRE(fs::exists(out));
  std::ifstream in(out);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == format_csv(table));
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));

  REQUIRE(fs::exists(net_path));
  const StateNet net = load_net(net_path.string());
  CHECK(net.dim() == 2);
  CHECK(net.epsilon() == 1.0);

  fs::remove_all(dir);
}

TEST_CASE("tomography experiment stays within two percent of the trace distance") {
  const ResultTable table =
      run(make_config("tomography", {{"bases", "400"}, {"pairs", "25"}, {"seed", "1"}}));
  REQUIRE(table.rows.size() == 1);
  CHECK(std::get<bool>(table.rows[0].back()));
}

TEST_CASE("format_double: shortest representation round-trips") {
  for (double value : {0.1, 1.0 / 3.0, 2.0, 1e-12, 0.8660254037844386}) {
    CHECK(std::stod(format_double(value)) == value);
  }
  CHECK(format_double(0.5) == "0.5");
}

}  // TEST_SUITE
