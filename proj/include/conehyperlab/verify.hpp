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

// Numerical checks of the product formulas and hypergroup structure, each
// returning a structured report, plus the positivity exploration.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "conehyperlab/hopoly.hpp"
#include "conehyperlab/hypergroup.hpp"

namespace conehyperlab::verify {

struct CheckReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  cplx lhs;
  cplx rhs;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Fills abs_err and passed; tolerance must be positive.
CheckReport make_report(std::string name, nlohmann::json params, cplx lhs, cplx rhs, double tolerance,
                        std::uint64_t n_samples, std::uint64_t seed);

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);
bool all_passed(const std::vector<CheckReport>& reports);

nlohmann::json point_json(const hypergroup::ConePoint& x);

/// Allowance added to k * SE when a check runs on deterministic quadrature.
inline constexpr double kQuadratureTol = 1e-8;
/// Rounding allowance that keeps every tolerance positive.
inline constexpr double kRoundingTol = 1e-12;

// Product formula on the cone: phi(x) phi(y) against the convolution integral.
CheckReport check_product_cone(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l,
                               double p, const hypergroup::ConePoint& x, const hypergroup::ConePoint& y,
                               const hypergroup::ConvConfig& cfg);

/// Same check for several weights on one set of samples; results equal the single-weight calls.
std::vector<CheckReport> check_product_cone_many(const hopoly::PolyTable& table,
                                                 std::span<const hopoly::DominantWeight> lambdas, double l,
                                                 const hypergroup::ConePoint& x, const hypergroup::ConePoint& y,
                                                 const hypergroup::ConvConfig& cfg);

// Real-l product formula on the alcove with the principal branch of xi^l.
CheckReport check_product_jacobi(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l,
                                 double p, std::span<const double> t, std::span<const double> t2,
                                 const hypergroup::ConvConfig& cfg);

std::vector<CheckReport> check_product_jacobi_many(const hopoly::PolyTable& table,
                                                   std::span<const hopoly::DominantWeight> lambdas, double l,
                                                   std::span<const double> t, std::span<const double> t2,
                                                   const hypergroup::ConvConfig& cfg);

/// Disk polynomial product formula, x1 = z1 r1 and x2 = z2 r2 in the closed unit disk.
CheckReport check_disk_product(int n, int l, double p, cplx x1, cplx x2, int order = 48, int phase_points = 96);

/// c_{alpha,beta} from the n = 0 instance of the positive product formula.
double koornwinder_constant(double alpha, double beta);

/// The psi-identity linking the two rank-one representations.
CheckReport check_rank1_identity(double alpha, double beta, double theta, double theta2, double t);

/// Positive product formula for n >= 1 (first report) and its kernel rewrite (second report).
std::vector<CheckReport> check_koornwinder(int n, double alpha, double beta, double theta, double theta2);

/// Kernel form over {0 < r < I} x U(q) x SU(q), constant calibrated at lambda = 0.
CheckReport check_kernel_form(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l,
                              double p, std::span<const double> t, std::span<const double> t2, const McConfig& mc);

std::vector<CheckReport> check_orthogonality(double p, int q, int l_max, int max_deg,
                                             const hypergroup::HaarConfig& cfg = {});

/// Identity, involution, commutativity, associativity, mass and torus subgroup.
std::vector<CheckReport> check_axioms(int q, double p, int l, const hypergroup::ConvConfig& cfg);

struct PositivityReport {
  double p = 0.0;
  int q = 0;
  double l = 0.0;
  RealVec t;
  RealVec t2;
  int resolution = 0;
  std::vector<double> cells;  // signed mass per alcove cell, row-major in t_1, t_2, ...
  double min_kernel = 0.0;
  double neg_mass_fraction = 0.0;
  double noise_floor = 0.0;
  double cone_neg_mass_fraction = 0.0;  // the probability measure on X_q
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

PositivityReport positivity_scan(double p, int q, double l, std::span<const double> t, std::span<const double> t2,
                                 int resolution, const hypergroup::ConvConfig& cfg);

struct Rank1Tuple {
  double alpha;
  double beta;
  double theta;
  double theta2;
  double t;
};

/// 20 tuples with nonempty support and the principal branch continuous on it.
std::vector<Rank1Tuple> rank1_default_grid();

/// True when the psi-integrand e^{i beta psi} is continuous on its support.
bool rank1_branch_continuous(double beta, double theta, double theta2, double t);

struct SuiteOptions {
  int q = 1;
  double p = 3.0;
  double l = 0.0;
  int max_deg = 8;
  int quad_order = 0;
  hypergroup::ConvConfig conv;
  hypergroup::HaarConfig haar;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cone", "jacobi", "rank1", "disk", "koornwinder",
                                              "kernel", "ortho", "axioms", "all"};
  return names;
}

/// Runs a checker family over its default grid. Throws InvalidParam for unknown names.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteOptions& opt);

}  // namespace conehyperlab::verify
