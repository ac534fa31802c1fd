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

// Command-line front end: build tables, run checker suites, scan positivity.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conehyperlab/verify.hpp"
#include "json.hpp"

namespace conehyperlab::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kIllConditioned = 2, kCheckFailed = 3 };

struct RunConfig {
  int q = 1;
  double p = 3.0;
  double l = 0.0;
  int max_deg = 8;
  int quad_order = 0;           // 0: library default per rank
  std::uint64_t n_samples = 0;  // 0: 2e5 for q = 1, 2e6 otherwise
  std::uint64_t seed = 0;
  std::string scheme = "svd-param";
  std::string out_dir = ".";  // not embedded: outputs do not depend on it
  std::string format = "json";
  unsigned threads = 0;  // 0: available parallelism
  int resolution = 24;

  std::uint64_t samples() const;
  nlohmann::json to_json() const;
  /// Throws InvalidParam with a message naming the violated requirement.
  void validate() const;
};

/// Applies the keys of a JSON object to cfg; unknown keys are a config error.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// Seed used when neither a flag nor the config file sets one.
std::uint64_t env_seed();

/// kOk when every report passed, kCheckFailed otherwise.
int exit_code(const std::vector<verify::CheckReport>& reports);

int cmd_build(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out);
int cmd_scan_positivity(const RunConfig& cfg, std::ostream& out);

/// Full command line, including argv[0]. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conehyperlab::cli
