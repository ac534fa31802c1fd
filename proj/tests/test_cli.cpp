// Copyright 2026 The conehyperlab Authors.
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

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "conehyperlab/version.hpp"

using namespace conehyperlab::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "conehyperlab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("conehyperlab_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("build writes the table and residuals") {
  const auto dir = fresh_dir("build");
  const auto r = run_args({"build", "--q", "1", "--p", "3", "--l", "0", "--max-deg", "8", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "table.json"));
  CHECK(doc["version"] == conehyperlab::version());
  CHECK(doc["config"]["p"] == 3.0);
  CHECK(doc.contains("seed"));
  CHECK(doc["weights"].size() == 5);
  for (const auto& w : doc["weights"]) {
    CHECK(w["rel_residual"].get<double>() <= 1e-6);
  }
}

TEST_CASE("config errors exit with 1") {
  SUBCASE("p at the boundary") {
    const auto r = run_args({"build", "--q", "2", "--p", "3"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("p > 2q - 1") != std::string::npos);
  }
  SUBCASE("unknown suite") {
    const auto r = run_args({"verify", "nonsense"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  SUBCASE("bad flag values") {
    CHECK(run_args({"verify", "rank1", "--scheme", "grid"}).code == kConfigError);
    CHECK(run_args({"verify", "rank1", "--format", "xml"}).code == kConfigError);
    CHECK(run_args({"verify", "rank1", "--samples", "10"}).code == kConfigError);
    CHECK(run_args({"build", "--max-deg", "3"}).code == kConfigError);
    CHECK(run_args({"frobnicate"}).code == kConfigError);
    CHECK(run_args({}).code == kConfigError);
  }
  SUBCASE("bad config file") {
    const auto dir = fresh_dir("badcfg");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"q": 1, "colour": "red"})";
    CHECK(run_args({"build", "--config", (dir / "c.json").string()}).code == kConfigError);
    CHECK(run_args({"build", "--config", (dir / "missing.json").string()}).code == kConfigError);
  }
}

TEST_CASE("help and version") {
  CHECK(run_args({"--help"}).code == kOk);
  const auto v = run_args({"--version"});
  CHECK(v.code == kOk);
  CHECK(v.out.find(conehyperlab::version()) != std::string::npos);
}

TEST_CASE("flags override the config file, which overrides the environment seed") {
  const auto dir = fresh_dir("precedence");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"q": 1, "p": 4.0, "seed": 99, "n_samples": 5000})";
  const std::string cfg = (dir / "c.json").string();
  setenv("CONEHYPERLAB_SEED", "5", 1);

  REQUIRE(run_args({"verify", "rank1", "--config", cfg, "--out", (dir / "a").string()}).code == kOk);
  auto doc = nlohmann::json::parse(slurp(dir / "a" / "verify_rank1.json"));
  CHECK(doc["seed"] == 99);
  CHECK(doc["config"]["p"] == 4.0);
  CHECK(doc["config"]["n_samples"] == 5000);

  REQUIRE(run_args({"verify", "rank1", "--config", cfg, "--p", "6", "--seed", "12", "--out", (dir / "b").string()})
              .code == kOk);
  doc = nlohmann::json::parse(slurp(dir / "b" / "verify_rank1.json"));
  CHECK(doc["seed"] == 12);
  CHECK(doc["config"]["p"] == 6.0);

  REQUIRE(run_args({"verify", "rank1", "--out", (dir / "c").string()}).code == kOk);
  doc = nlohmann::json::parse(slurp(dir / "c" / "verify_rank1.json"));
  CHECK(doc["seed"] == 5);

  setenv("CONEHYPERLAB_SEED", "abc", 1);
  CHECK(run_args({"verify", "rank1", "--out", (dir / "d").string()}).code == kConfigError);
  unsetenv("CONEHYPERLAB_SEED");
}

TEST_CASE("same seed gives byte-identical output") {
  const auto dir = fresh_dir("determinism");
  for (const char* fmt : {"json", "csv"}) {
    for (const char* sub : {"a", "b"}) {
      const auto r = run_args({"verify", "cone", "--q", "1", "--p", "3", "--max-deg", "4", "--samples", "2000",
                               "--seed", "17", "--format", fmt, "--out", (dir / sub).string()});
      REQUIRE(r.code == kOk);
    }
    const std::string name = std::string("verify_cone.") + fmt;
    const auto a = slurp(dir / "a" / name);
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b" / name));
  }
  const auto csv = slurp(dir / "a" / "verify_cone.csv");
  CHECK(csv.find("# version: ") == 0);
  CHECK(csv.find("# seed: 17") != std::string::npos);
}

TEST_CASE("a failing check exits with 3") {
  namespace v = conehyperlab::verify;
  std::vector<v::CheckReport> reps{v::make_report("a", {}, 1.0, 1.0, 1e-9, 0, 0)};
  CHECK(exit_code(reps) == kOk);
  reps.push_back(v::make_report("b", {}, 1.0, 2.0, 1e-9, 0, 0));
  CHECK(exit_code(reps) == kCheckFailed);
}

TEST_CASE("positivity scan") {
  const auto dir = fresh_dir("scan");
  const auto r = run_args({"scan-positivity", "--q", "1", "--p", "3", "--l", "0.5", "--samples", "20000", "--seed",
                           "4", "--format", "csv", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  const auto csv = slurp(dir / "positivity.csv");
  CHECK(csv.find("p,l,t,t2,min_kernel,neg_mass_fraction") != std::string::npos);
  CHECK(fs::exists(dir / "positivity_cells.dat"));
  // l = 0 rows carry no negative mass.
  std::istringstream lines(csv);
  std::string line;
  int zero_rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("3,0,", 0) == 0) {
      ++zero_rows;
      CHECK(line.find(",0,0,") != std::string::npos);
    }
  }
  CHECK(zero_rows == 3);
}
