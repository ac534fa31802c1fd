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

// Block Monte Carlo with deterministic reduction.
//
// The sample budget is split into a fixed number of blocks. Block b draws from
// its own Philox stream, so results are identical for any worker count. The
// reported standard error is the delete-one-block jackknife of the estimator.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "json.hpp"

#include "conehyperlab/rng.hpp"

namespace conehyperlab {

struct Estimate {
  std::complex<double> value;
  double stderr_ = 0.0;  // zero for deterministic quadrature
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

struct McConfig {
  std::uint64_t n_samples = 200000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // separates estimators that share a seed
  unsigned threads = 0;      // 0: hardware concurrency
};

inline constexpr int kMaxBlocks = 256;

/// Draws one sample, writes the integrand values into `out` and returns the
/// sample's weight. Weights may be signed; their sum must not vanish.
using Sampler = std::function<double(Philox& rng, std::span<std::complex<double>> out)>;

enum class Normalization {
  self,   // sum w f / sum w
  plain,  // sum w f / N
};

std::vector<Estimate> monte_carlo(const McConfig& cfg, std::size_t n_out, const Sampler& sampler,
                                  Normalization norm = Normalization::self);

unsigned resolve_threads(unsigned requested);

}  // namespace conehyperlab
