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

#include "conehyperlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "conehyperlab/errors.hpp"

namespace conehyperlab {

nlohmann::json Estimate::to_json() const {
  return {{"value_re", value.real()},
          {"value_im", value.imag()},
          {"stderr", stderr_},
          {"n_samples", n_samples},
          {"seed", seed}};
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Block {
  std::vector<std::complex<double>> sum;
  double weight = 0.0;
};

}  // namespace

std::vector<Estimate> monte_carlo(const McConfig& cfg, std::size_t n_out, const Sampler& sampler,
                                  Normalization norm) {
  if (cfg.n_samples < 2) {
    throw InvalidParam("Monte Carlo needs at least two samples");
  }
  const std::uint64_t n_blocks = std::min<std::uint64_t>(kMaxBlocks, cfg.n_samples);
  std::vector<Block> blocks(n_blocks);

  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = cfg.n_samples * b / n_blocks;
    const std::uint64_t end = cfg.n_samples * (b + 1) / n_blocks;
    Philox rng(cfg.seed, (cfg.stream << 16) | b);
    Block& blk = blocks[b];
    blk.sum.assign(n_out, 0.0);
    std::vector<std::complex<double>> out(n_out);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double w = sampler(rng, out);
      if (w == 0.0) {
        blk.weight += norm == Normalization::plain ? 1.0 : 0.0;
        continue;
      }
      for (std::size_t k = 0; k < n_out; ++k) {
        blk.sum[k] += w * out[k];
      }
      blk.weight += norm == Normalization::plain ? 1.0 : w;
    }
  };

  const unsigned n_threads = std::min<std::uint64_t>(resolve_threads(cfg.threads), n_blocks);
  if (n_threads <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      run_block(b);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) {
          run_block(b);
        }
      });
    }
  }

  double total_w = 0.0;
  std::vector<std::complex<double>> total(n_out, 0.0);
  for (const auto& blk : blocks) {
    total_w += blk.weight;
    for (std::size_t k = 0; k < n_out; ++k) {
      total[k] += blk.sum[k];
    }
  }
  if (total_w == 0.0 || !std::isfinite(total_w)) {
    throw DomainError("Monte Carlo weights sum to zero or overflow");
  }

  std::vector<Estimate> result(n_out);
  std::vector<std::complex<double>> loo(n_blocks);
  for (std::size_t k = 0; k < n_out; ++k) {
    std::complex<double> mean_loo = 0.0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      const double w = total_w - blocks[b].weight;
      loo[b] = w != 0.0 ? (total[k] - blocks[b].sum[k]) / w : total[k] / total_w;
      mean_loo += loo[b];
    }
    mean_loo /= static_cast<double>(n_blocks);
    double var = 0.0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      var += std::norm(loo[b] - mean_loo);
    }
    var *= static_cast<double>(n_blocks - 1) / static_cast<double>(n_blocks);
    result[k].value = total[k] / total_w;
    result[k].stderr_ = std::sqrt(var);
    result[k].n_samples = cfg.n_samples;
    result[k].seed = cfg.seed;
  }
  return result;
}

}  // namespace conehyperlab
