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

// Heckman-Opdam Jacobi polynomials of type BC_q, built numerically by
// Gram-Schmidt in the basis of Weyl-orbit sums.
//
// Conventions: roots 2e_i (multiplicity k1), 4e_i (k2), 2e_i +- 2e_j (k3).
// The orbit sum of a dominant weight mu is
//   m_mu(t) = sum over the distinct images nu of mu under signed permutations
//             of exp(i <nu, t>),
// i.e. a sum over distinct permutations of prod_j (mu_j ? 2 cos(mu_j t_j) : 1).
// R_lambda is normalized by R_lambda(0) = 1, and P_lambda = R_lambda / lead
// is monic in m_lambda.

#pragma once

#include <boost/container/static_vector.hpp>
#include "json.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "conehyperlab/matcore.hpp"

namespace conehyperlab::hopoly {

/// Nonincreasing tuple of even nonnegative integers.
class DominantWeight {
 public:
  using Parts = boost::container::static_vector<int, kMaxRank>;

  DominantWeight() = default;
  explicit DominantWeight(std::span<const int> parts);
  DominantWeight(std::initializer_list<int> parts);

  const Parts& parts() const { return parts_; }
  int rank() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[i]; }
  /// Sum of the parts.
  int size() const;
  bool is_zero() const;
  std::string str() const;

  friend bool operator==(const DominantWeight&, const DominantWeight&) = default;

 private:
  Parts parts_;
};

/// Graded order: total size first, then lexicographic (a refinement of dominance).
bool graded_less(const DominantWeight& a, const DominantWeight& b);

/// mu <= lambda in the dominance order of BC_q (all partial sums of lambda - mu >= 0).
bool dominated_by(const DominantWeight& mu, const DominantWeight& lambda);

/// Multiplicity k(p, q, l) = (p - q - |l|, 1/2 + |l|, 1).
struct Multiplicity {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double p = 0.0;
  int q = 0;
  double l = 0.0;

  /// Throws InvalidParam unless p > 2q - 1.
  static Multiplicity from_params(double p, int q, double l);
};

/// All dominant weights with lambda_1 <= max_deg, in graded order.
std::vector<DominantWeight> enumerate_weights(int q, int max_deg);

/// rho(k(p, q, l)); component j (1-based) is p - q + |l| + 1 + 2(q - j).
RealVec rho(double p, int q, double l);

/// Generalized c-function. Throws PoleError when a Gamma argument is a pole.
double c_function(std::span<const double> lambda, const Multiplicity& k);

/// Orthogonality weight prod_j sin^{2k1+2k2} t_j cos^{2k2} t_j
///   * prod_{i<j} (cos 2t_i - cos 2t_j)^2 (overall constant set to 1).
/// Throws DomainError when t is outside the alcove by more than 1e-12.
double weight_density(std::span<const double> t, const Multiplicity& k);

/// Tensor rule on the box [0, pi/2]^q with weights divided by q!, so that
/// Weyl-symmetric integrands are integrated over the alcove.
struct AlcoveRule {
  int q = 0;
  int order = 0;
  std::vector<double> nodes;  // row-major, q coordinates per node
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(q), static_cast<std::size_t>(q)};
  }
};

/// Throws InvalidParam for q > 3 unless allow_large_rank is set.
AlcoveRule alcove_quadrature(int q, int order, bool allow_large_rank = false);

/// Orbit sum m_mu(t) (defined for every t, Weyl invariant).
double orbit_sum(const DominantWeight& mu, std::span<const double> t);

/// Default Gauss-Legendre order per dimension for a given rank.
int default_quad_order(int q);

class PolyTable {
 public:
  struct Entry {
    DominantWeight lambda;
    std::vector<double> values;  // coefficients over weights()[0 .. index]
  };

  int q() const { return k_.q; }
  const Multiplicity& multiplicity() const { return k_; }
  int max_deg() const { return max_deg_; }
  int quad_order() const { return quad_order_; }
  const std::vector<DominantWeight>& weights() const { return weights_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Index of lambda in weights(); throws MissingWeight if absent.
  std::size_t index_of(const DominantWeight& lambda) const;
  bool contains(const DominantWeight& lambda) const;

  /// Coefficient of m_lambda in R_lambda.
  double leading_coefficient(const DominantWeight& lambda) const;

  /// R_lambda(k; t) for the entry at `index`.
  double eval(std::size_t index, std::span<const double> t) const;

  /// Evaluates every R_lambda of the table at t.
  void eval_all(std::span<const double> t, std::span<double> out) const;

  nlohmann::json to_json() const;
  static PolyTable from_json(const nlohmann::json& doc);

 private:
  friend PolyTable build_basis(const Multiplicity& k, int max_deg, int quad_order);

  void prepare_orbits();
  void orbit_values(std::span<const double> t, std::size_t count, std::span<double> out) const;

  Multiplicity k_;
  int max_deg_ = 0;
  int quad_order_ = 0;
  std::vector<DominantWeight> weights_;
  std::vector<Entry> entries_;
  // Distinct permutations of each weight, flattened.
  std::vector<std::vector<DominantWeight::Parts>> orbits_;
};

/// Gram-Schmidt (with one reorthogonalization pass) of the orbit sums in graded
/// order under the weight_density inner product. quad_order <= 0 selects
/// default_quad_order(q). Throws IllConditioned if a squared norm underflows.
PolyTable build_basis(const Multiplicity& k, int max_deg, int quad_order = 0);

/// R_lambda(k; t); throws MissingWeight if lambda is not in the table.
double eval_R(const PolyTable& table, const DominantWeight& lambda, std::span<const double> t);

}  // namespace conehyperlab::hopoly
