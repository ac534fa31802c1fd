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

// Acceptance suite: one pass/fail line per criterion, plus informational lines.
// Usage: conehyperlab_acceptance [OUT_DIR]. Exit 0 iff every criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "conehyperlab/hopoly.hpp"
#include "conehyperlab/jacobi1d.hpp"
#include "conehyperlab/matcore.hpp"
#include "conehyperlab/verify.hpp"
#include "conehyperlab/version.hpp"

using namespace conehyperlab;
using hopoly::DominantWeight;
using hopoly::Multiplicity;
using hypergroup::ConePoint;
using hypergroup::ConvConfig;
using verify::CheckReport;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Largest abs_err / tolerance ratio and the failure count of a report list.
Outcome summarize(const std::vector<CheckReport>& reps, const std::string& extra = "") {
  double worst_err = 0.0;
  double worst_ratio = 0.0;
  int failed = 0;
  for (const auto& r : reps) {
    worst_err = std::max(worst_err, r.abs_err);
    worst_ratio = std::max(worst_ratio, r.abs_err / r.tolerance);
    failed += r.passed ? 0 : 1;
  }
  std::string d = std::to_string(reps.size() - failed) + "/" + std::to_string(reps.size()) +
                  " checks, max err " + fmt(worst_err) + ", max err/tol " + fmt(worst_ratio);
  if (!extra.empty()) {
    d += ", " + extra;
  }
  return {failed == 0 && !reps.empty(), d};
}

ConePoint random_point(int q, Philox& rng) {
  RealVec t;
  for (int j = 0; j < q; ++j) {
    t.push_back(rng.uniform(0.05, kPi / 2 - 0.05));
  }
  std::sort(t.begin(), t.end(), std::greater<>());
  return ConePoint(view(t), std::polar(1.0, rng.uniform(-kPi, kPi)));
}

DominantWeight w1(int n) { return DominantWeight{n}; }

// Report lists of criteria 3 to 9, kept for the determinism rerun.
struct Reports {
  std::vector<CheckReport> c3, c4, c5, c6, c7, c8, c9;
};

std::vector<CheckReport> criterion3() {
  std::vector<CheckReport> out;
  Philox rng(kSeed, 3);
  std::vector<std::pair<ConePoint, ConePoint>> pairs;
  for (int i = 0; i < 5; ++i) {
    const ConePoint x = random_point(1, rng);
    pairs.emplace_back(x, random_point(1, rng));
  }
  const std::vector<DominantWeight> lams{w1(0), w1(2), w1(4), w1(8)};
  for (double p : {2.0, 3.0}) {
    for (double l : {0.0, 1.0, 2.0}) {
      const auto tab = hopoly::build_basis(Multiplicity::from_params(p, 1, l), 8);
      for (const auto& [x, y] : pairs) {
        auto reps = verify::check_product_cone_many(tab, lams, l, x, y, ConvConfig{});
        for (auto& r : reps) {
          // Criterion tolerance: 1e-7 absolute.
          r.passed = r.passed && r.abs_err <= 1e-7;
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

std::vector<CheckReport> criterion4() {
  std::vector<CheckReport> out;
  Philox rng(kSeed, 4);
  const ConePoint x = random_point(2, rng);
  const ConePoint y = random_point(2, rng);
  const std::vector<DominantWeight> lams{DominantWeight{0, 0}, DominantWeight{2, 0}, DominantWeight{2, 2}};
  std::uint64_t stream = 0;
  for (double p : {5.0, 3.5}) {
    for (double l : {0.0, 1.0}) {
      const auto tab = hopoly::build_basis(Multiplicity::from_params(p, 2, l), 2);
      ConvConfig cfg;
      cfg.engine = hypergroup::Engine::monte_carlo;
      cfg.mc.n_samples = 2000000;
      cfg.mc.seed = kSeed;
      cfg.mc.stream = stream++;
      auto reps = verify::check_product_cone_many(tab, lams, l, x, y, cfg);
      out.insert(out.end(), reps.begin(), reps.end());
    }
  }
  return out;
}

std::vector<CheckReport> criterion5() {
  std::vector<CheckReport> out;
  const std::vector<std::pair<RealVec, RealVec>> pairs{{{0.3}, {0.9}}, {{0.7}, {0.6}}, {{1.1}, {0.4}}};
  const std::vector<DominantWeight> lams{w1(2), w1(4)};
  for (double l : {0.5, 1.5}) {
    const auto tab = hopoly::build_basis(Multiplicity::from_params(2.5, 1, l), 4);
    for (const auto& [t, t2] : pairs) {
      auto reps = verify::check_product_jacobi_many(tab, lams, l, view(t), view(t2), ConvConfig{});
      out.insert(out.end(), reps.begin(), reps.end());
    }
  }
  return out;
}

std::vector<CheckReport> criterion6() {
  std::vector<CheckReport> out;
  for (const auto& g : verify::rank1_default_grid()) {
    auto r = verify::check_rank1_identity(g.alpha, g.beta, g.theta, g.theta2, g.t);
    r.passed = r.passed && std::abs(r.rhs.imag()) <= 1e-6;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckReport> criterion7() {
  verify::SuiteOptions opt;
  return verify::run_suite("koornwinder", opt);
}

std::vector<CheckReport> criterion8() {
  auto out = verify::check_orthogonality(3.0, 1, 2, 4);
  hypergroup::HaarConfig haar;
  haar.monte_carlo = true;
  haar.mc.n_samples = 1000000;
  haar.mc.seed = kSeed;
  auto q2 = verify::check_orthogonality(5.0, 2, 2, 4, haar);
  out.insert(out.end(), q2.begin(), q2.end());
  return out;
}

std::vector<CheckReport> criterion9() {
  ConvConfig c1;
  c1.mc.n_samples = 200000;
  c1.mc.seed = kSeed;
  auto out = verify::check_axioms(1, 3.0, 1, c1);
  ConvConfig c2;
  c2.mc.n_samples = 2000000;
  c2.mc.seed = kSeed;
  auto q2 = verify::check_axioms(2, 5.0, 1, c2);
  out.insert(out.end(), q2.begin(), q2.end());
  return out;
}

std::string dump(const std::vector<CheckReport>& reps, int id) {
  nlohmann::json doc{{"version", version()}, {"criterion", id}, {"seed", kSeed}};
  doc["reports"] = verify::reports_to_json(reps);
  return doc.dump(2) + "\n";
}

void write(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::create_directories(out_dir);
  std::cout << "conehyperlab " << version() << " acceptance, seed " << kSeed << "\n";

  Reports reps;
  std::vector<Criterion> criteria;

  criteria.push_back({1, "rank-one reduction to Jacobi polynomials", 30.0, [] {
                        double worst = 0.0;
                        for (double p : {2.0, 3.0, 4.5}) {
                          for (double l : {0.0, 1.0, 2.0}) {
                            const auto tab = hopoly::build_basis(Multiplicity::from_params(p, 1, l), 8);
                            for (int n = 0; n <= 4; ++n) {
                              const std::size_t idx = tab.index_of(w1(2 * n));
                              for (int i = 0; i < 200; ++i) {
                                const double th = (kPi / 2) * i / 199.0;
                                const double t[1] = {th};
                                const double a = tab.eval(idx, t);
                                const double b = jacobi1d::eval_jacobi(n, p - 1.0, l, std::cos(2.0 * th));
                                worst = std::max(worst, std::abs(a - b));
                              }
                            }
                          }
                        }
                        return Outcome{worst <= 1e-8, "max err " + fmt(worst) + " (tol 1e-08)"};
                      }});
  criteria.push_back({2, "kappa(p, 1) = pi/(p-1)", 1.0, [] {
                        double worst = 0.0;
                        for (double p : {1.5, 2.0, 3.0, 7.0}) {
                          worst = std::max(worst, std::abs(kappa(p, 1) - kPi / (p - 1.0)));
                        }
                        return Outcome{worst <= 1e-9, "max err " + fmt(worst) + " (tol 1e-09)"};
                      }});
  criteria.push_back({3, "product formula q=1 by quadrature", 120.0, [&] {
                        reps.c3 = criterion3();
                        return summarize(reps.c3, "tol 1e-07");
                      }});
  criteria.push_back({4, "product formula q=2 by Monte Carlo", 600.0, [&] {
                        reps.c4 = criterion4();
                        double se = 0.0;
                        for (const auto& r : reps.c4) {
                          se = std::max(se, (r.tolerance - 1e-12) / 4.0);
                        }
                        auto o = summarize(reps.c4, "max SE " + fmt(se) + " (bound 5e-03)");
                        o.passed = o.passed && se <= 5e-3;
                        return o;
                      }});
  criteria.push_back({5, "real-l Jacobi product formula", 120.0, [&] {
                        reps.c5 = criterion5();
                        return summarize(reps.c5);
                      }});
  criteria.push_back({6, "rank-one psi-integral identity", 60.0, [&] {
                        reps.c6 = criterion6();
                        auto o = summarize(reps.c6, "tol 1e-06");
                        o.passed = o.passed && reps.c6.size() == 20;
                        return o;
                      }});
  criteria.push_back({7, "Koornwinder product and kernel rewrite", 60.0, [&] {
                        reps.c7 = criterion7();
                        return summarize(reps.c7);
                      }});
  criteria.push_back({8, "orthogonality under the Haar measure", 300.0, [&] {
                        reps.c8 = criterion8();
                        return summarize(reps.c8);
                      }});
  criteria.push_back({9, "hypergroup axioms and torus subgroup", 300.0, [&] {
                        reps.c9 = criterion9();
                        return summarize(reps.c9);
                      }});
  criteria.push_back({10, "leading coefficient vs c-function", 60.0, [] {
                        double worst = 0.0;
                        int count = 0;
                        int skipped = 0;
                        for (int q = 1; q <= 2; ++q) {
                          for (auto [p, l] : {std::pair{3.0, 0.0}, {3.0, 1.0}, {5.0, 0.0}, {5.0, 2.0}}) {
                            if (!(p > 2.0 * q - 1.0)) {
                              ++skipped;
                              continue;
                            }
                            const auto k = Multiplicity::from_params(p, q, l);
                            const auto tab = hopoly::build_basis(k, 4);
                            const RealVec r = hopoly::rho(p, q, l);
                            for (const auto& lam : tab.weights()) {
                              RealVec s;
                              for (int i = 0; i < q; ++i) {
                                s.push_back(lam[i] + r[i]);
                              }
                              const double c = hopoly::c_function(view(s), k);
                              worst = std::max(worst, std::abs(tab.leading_coefficient(lam) - c) / std::abs(c));
                              ++count;
                            }
                          }
                        }
                        return Outcome{worst <= 1e-6, std::to_string(count) + " weights, max rel err " + fmt(worst) +
                                                          " (tol 1e-06), " + std::to_string(skipped) +
                                                          " (q, p) pairs outside p > 2q - 1 skipped"};
                      }});
  criteria.push_back({11, "determinism of criteria 3-9", 1200.0, [&] {
                        const std::vector<std::pair<int, std::function<std::vector<CheckReport>()>>> reruns{
                            {3, criterion3}, {4, criterion4}, {5, criterion5}, {6, criterion6},
                            {7, criterion7}, {8, criterion8}, {9, criterion9}};
                        const std::vector<const std::vector<CheckReport>*> first{&reps.c3, &reps.c4, &reps.c5,
                                                                                 &reps.c6, &reps.c7, &reps.c8,
                                                                                 &reps.c9};
                        int same = 0;
                        for (std::size_t i = 0; i < reruns.size(); ++i) {
                          const int id = reruns[i].first;
                          const std::string a = dump(*first[i], id);
                          const std::string b = dump(reruns[i].second(), id);
                          write(out_dir / ("criterion_" + std::to_string(id) + ".json"), a);
                          write(out_dir / ("criterion_" + std::to_string(id) + "_rerun.json"), b);
                          same += a == b ? 1 : 0;
                        }
                        return Outcome{same == 7, std::to_string(same) + "/7 report files byte-identical"};
                      }});

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool ok = o.passed && in_time;
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " | " << o.detail << " | "
              << fmt(secs) << " s (budget " << fmt(c.budget_s) << " s" << (in_time ? "" : ", exceeded") << ")"
              << std::endl;
  }

  // Outside t + t' <= pi/2 the principal branch winds; shown, not gated.
  const auto wind1 = verify::check_rank1_identity(2.0, 0.5, kPi / 3, kPi / 3, 0.2);
  std::cout << "INFO winding region, psi identity alpha=2 beta=0.5 theta=theta'=pi/3 t=0.2: lhs "
            << fmt(wind1.lhs.real()) << " rhs " << fmt(wind1.rhs.real()) << (wind1.passed ? " (agrees)" : " (differs)")
            << std::endl;
  const auto tab = hopoly::build_basis(Multiplicity::from_params(2.5, 1, 0.5), 2);
  const double t[1] = {kPi / 3};
  const auto wind2 = verify::check_product_jacobi(tab, w1(2), 0.5, 2.5, t, t, ConvConfig{});
  std::cout << "INFO winding region, Jacobi product q=1 p=2.5 l=0.5 lambda=(2) t=t'=pi/3: lhs "
            << fmt(wind2.lhs.real()) << " rhs " << fmt(wind2.rhs.real()) << (wind2.passed ? " (agrees)" : " (differs)")
            << std::endl;

  std::cout << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return all ? 0 : 1;
}
