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

#include "conehyperlab/hopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/quadrature.hpp"

namespace conehyperlab::hopoly {

namespace {

constexpr double kDomainTol = 1e-12;

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

void validate_parts(std::span<const int> parts) {
  if (parts.empty() || parts.size() > static_cast<std::size_t>(kMaxRank)) {
    throw InvalidParam("dominant weight rank must be in [1, 8]");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0 || parts[i] % 2 != 0) {
      throw InvalidParam("dominant weight entries must be even and nonnegative");
    }
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw InvalidParam("dominant weight must be nonincreasing");
    }
  }
}

// Weight without the alcove check; symmetric under the Weyl group.
double weight_unchecked(std::span<const double> t, const Multiplicity& k) {
  const double sin_exp = 2.0 * k.k1 + 2.0 * k.k2;
  const double cos_exp = 2.0 * k.k2;
  double w = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    w *= std::pow(std::abs(std::sin(t[j])), sin_exp) * std::pow(std::abs(std::cos(t[j])), cos_exp);
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double diff = std::abs(std::cos(2.0 * t[i]) - std::cos(2.0 * t[j]));
      w *= k.k3 == 1.0 ? diff * diff : std::pow(diff, 2.0 * k.k3);
    }
  }
  return w;
}

// log|Gamma(x)| and sign, rejecting poles.
double signed_lgamma(double x, int& sign, const char* what) {
  if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-13) {
    throw PoleError(std::string("c-function Gamma pole in factor ") + what + " at argument " +
                    std::to_string(x));
  }
  sign = (x > 0.0 || static_cast<long>(std::floor(x)) % 2 == 0) ? 1 : -1;
  return std::lgamma(x);
}

struct GammaRatio {
  double log = 0.0;
  int sign = 1;

  // Multiplies by Gamma(num) / Gamma(den).
  void mul(double num, double den, const char* what) {
    int s1 = 1;
    int s2 = 1;
    log += signed_lgamma(num, s1, what) - signed_lgamma(den, s2, what);
    sign *= s1 * s2;
  }
};

// Accumulates prod over positive roots of Gamma(x + h) / Gamma(x + h + k_alpha)
// for the coroot pairings x of `v`, or its reciprocal when `invert` is set.
void c_product(std::span<const double> v, const Multiplicity& k, bool invert, GammaRatio& acc) {
  const int q = static_cast<int>(v.size());
  auto factor = [&](double x, double half, double kalpha, const char* what) {
    if (invert) {
      acc.mul(x + half + kalpha, x + half, what);
    } else {
      acc.mul(x + half, x + half + kalpha, what);
    }
  };
  for (int i = 0; i < q; ++i) {
    factor(v[i], 0.0, k.k1, "2e_i");
    factor(0.5 * v[i], 0.5 * k.k1, k.k2, "4e_i");
    for (int j = i + 1; j < q; ++j) {
      factor(0.5 * (v[i] + v[j]), 0.0, k.k3, "2e_i+2e_j");
      factor(0.5 * (v[i] - v[j]), 0.0, k.k3, "2e_i-2e_j");
    }
  }
}

}  // namespace

DominantWeight::DominantWeight(std::span<const int> parts) : parts_(parts.begin(), parts.end()) {
  validate_parts(parts);
}

DominantWeight::DominantWeight(std::initializer_list<int> parts) : parts_(parts.begin(), parts.end()) {
  validate_parts(std::span<const int>(parts.begin(), parts.size()));
}

int DominantWeight::size() const {
  int s = 0;
  for (int x : parts_) {
    s += x;
  }
  return s;
}

bool DominantWeight::is_zero() const { return parts_.empty() || parts_.front() == 0; }

std::string DominantWeight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    os << (i ? "," : "") << parts_[i];
  }
  os << ')';
  return os.str();
}

bool graded_less(const DominantWeight& a, const DominantWeight& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return std::lexicographical_compare(a.parts().begin(), a.parts().end(), b.parts().begin(),
                                      b.parts().end());
}

bool dominated_by(const DominantWeight& mu, const DominantWeight& lambda) {
  int partial = 0;
  for (int i = 0; i < lambda.rank(); ++i) {
    partial += lambda[i] - mu[i];
    if (partial < 0) {
      return false;
    }
  }
  return true;
}

Multiplicity Multiplicity::from_params(double p, int q, double l) {
  if (q < 1 || q > kMaxRank) {
    throw InvalidParam("rank q must be in [1, 8]");
  }
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("parameter p must satisfy p > 2q - 1 (q = " + std::to_string(q) +
                       ", p = " + std::to_string(p) + ")");
  }
  const double al = std::abs(l);
  return {p - q - al, 0.5 + al, 1.0, p, q, l};
}

std::vector<DominantWeight> enumerate_weights(int q, int max_deg) {
  if (q < 1 || q > kMaxRank) {
    throw InvalidParam("rank q must be in [1, 8]");
  }
  if (max_deg < 0 || max_deg % 2 != 0) {
    throw InvalidParam("max_deg must be even and nonnegative");
  }
  std::vector<DominantWeight> out;
  DominantWeight::Parts cur(q, 0);
  // Enumerate nonincreasing tuples with entries in {0, 2, ..., max_deg}.
  auto rec = [&](auto&& self, int pos, int cap) -> void {
    if (pos == q) {
      out.emplace_back(std::span<const int>(cur.data(), cur.size()));
      return;
    }
    for (int v = 0; v <= cap; v += 2) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, max_deg);
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

RealVec rho(double p, int q, double l) {
  RealVec r;
  for (int j = 1; j <= q; ++j) {
    r.push_back(p - q + std::abs(l) + 1.0 + 2.0 * (q - j));
  }
  return r;
}

double c_function(std::span<const double> lambda, const Multiplicity& k) {
  const int q = static_cast<int>(lambda.size());
  RealVec r;
  for (int i = 0; i < q; ++i) {
    r.push_back(k.k1 + 2.0 * k.k2 + 2.0 * k.k3 * (q - 1 - i));
  }
  GammaRatio acc;
  c_product(lambda, k, false, acc);
  c_product(view(r), k, true, acc);
  return acc.sign * std::exp(acc.log);
}

double weight_density(std::span<const double> t, const Multiplicity& k) {
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double upper = j == 0 ? std::numbers::pi / 2 : t[j - 1];
    if (t[j] > upper + kDomainTol || t[j] < -kDomainTol) {
      throw DomainError("point outside the alcove");
    }
  }
  return weight_unchecked(t, k);
}

AlcoveRule alcove_quadrature(int q, int order, bool allow_large_rank) {
  if (q < 1 || (q > 3 && !allow_large_rank) || q > kMaxRank) {
    throw InvalidParam("alcove quadrature supports q <= 3 (got " + std::to_string(q) + ")");
  }
  if (order < 8) {
    throw InvalidParam("alcove quadrature order must be at least 8");
  }
  const auto gl = quadrature::gauss_legendre(order, 0.0, std::numbers::pi / 2);
  AlcoveRule rule;
  rule.q = q;
  rule.order = order;
  std::size_t total = 1;
  for (int i = 0; i < q; ++i) {
    total *= static_cast<std::size_t>(order);
  }
  rule.nodes.reserve(total * q);
  rule.weights.reserve(total);
  const double sym = 1.0 / factorial(q);
  std::vector<int> idx(q, 0);
  for (std::size_t n = 0; n < total; ++n) {
    double w = sym;
    for (int j = 0; j < q; ++j) {
      rule.nodes.push_back(gl.nodes[idx[j]]);
      w *= gl.weights[idx[j]];
    }
    rule.weights.push_back(w);
    for (int j = 0; j < q && ++idx[j] == order; ++j) {
      idx[j] = 0;
    }
  }
  return rule;
}

double orbit_sum(const DominantWeight& mu, std::span<const double> t) {
  DominantWeight::Parts perm = mu.parts();
  std::sort(perm.begin(), perm.end());
  double sum = 0.0;
  do {
    double term = 1.0;
    for (std::size_t j = 0; j < perm.size(); ++j) {
      if (perm[j] != 0) {
        term *= 2.0 * std::cos(perm[j] * t[j]);
      }
    }
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

int default_quad_order(int q) { return q <= 2 ? 64 : 32; }

std::size_t PolyTable::index_of(const DominantWeight& lambda) const {
  const auto it = std::find(weights_.begin(), weights_.end(), lambda);
  if (it == weights_.end()) {
    throw MissingWeight("weight " + lambda.str() + " not in table");
  }
  return static_cast<std::size_t>(it - weights_.begin());
}

bool PolyTable::contains(const DominantWeight& lambda) const {
  return std::find(weights_.begin(), weights_.end(), lambda) != weights_.end();
}

double PolyTable::leading_coefficient(const DominantWeight& lambda) const {
  return entries_[index_of(lambda)].values.back();
}

void PolyTable::prepare_orbits() {
  orbits_.clear();
  for (const auto& w : weights_) {
    DominantWeight::Parts perm = w.parts();
    std::sort(perm.begin(), perm.end());
    std::vector<DominantWeight::Parts> list;
    do {
      list.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    orbits_.push_back(std::move(list));
  }
}

void PolyTable::orbit_values(std::span<const double> t, std::size_t count, std::span<double> out) const {
  const int q = k_.q;
  const int levels = max_deg_ / 2 + 1;
  // cosines[j * levels + m] = (m ? 2 cos(2 m t_j) : 1)
  std::array<double, kMaxRank * 64> cosines{};
  for (int j = 0; j < q; ++j) {
    cosines[j * levels] = 1.0;
    for (int m = 1; m < levels; ++m) {
      cosines[j * levels + m] = 2.0 * std::cos(2.0 * m * t[j]);
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    double sum = 0.0;
    for (const auto& perm : orbits_[i]) {
      double term = 1.0;
      for (int j = 0; j < q; ++j) {
        term *= cosines[j * levels + perm[j] / 2];
      }
      sum += term;
    }
    out[i] = sum;
  }
}

double PolyTable::eval(std::size_t index, std::span<const double> t) const {
  std::array<double, 512> m{};
  const auto& values = entries_[index].values;
  orbit_values(t, values.size(), m);
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += values[i] * m[i];
  }
  return s;
}

void PolyTable::eval_all(std::span<const double> t, std::span<double> out) const {
  std::array<double, 512> m{};
  orbit_values(t, weights_.size(), m);
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& values = entries_[e].values;
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      s += values[i] * m[i];
    }
    out[e] = s;
  }
}

nlohmann::json PolyTable::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    nlohmann::json mus = nlohmann::json::array();
    for (std::size_t i = 0; i < entries_[e].values.size(); ++i) {
      mus.push_back(std::vector<int>(weights_[i].parts().begin(), weights_[i].parts().end()));
    }
    coeffs.push_back({{"lambda", std::vector<int>(entries_[e].lambda.parts().begin(),
                                                  entries_[e].lambda.parts().end())},
                      {"mus", mus},
                      {"values", entries_[e].values}});
  }
  return {{"q", k_.q},
          {"p", k_.p},
          {"l", k_.l},
          {"max_deg", max_deg_},
          {"quad_order", quad_order_},
          {"coeffs", coeffs}};
}

PolyTable PolyTable::from_json(const nlohmann::json& doc) {
  PolyTable t;
  t.k_ = Multiplicity::from_params(doc.at("p").get<double>(), doc.at("q").get<int>(),
                                   doc.at("l").get<double>());
  t.max_deg_ = doc.at("max_deg").get<int>();
  t.quad_order_ = doc.at("quad_order").get<int>();
  t.weights_ = enumerate_weights(t.k_.q, t.max_deg_);
  const auto& coeffs = doc.at("coeffs");
  if (coeffs.size() != t.weights_.size()) {
    throw InvalidParam("table JSON has " + std::to_string(coeffs.size()) + " entries, expected " +
                       std::to_string(t.weights_.size()));
  }
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    const auto parts = coeffs[e].at("lambda").get<std::vector<int>>();
    DominantWeight lambda(parts);
    if (!(lambda == t.weights_[e])) {
      throw InvalidParam("table JSON weight order mismatch at " + lambda.str());
    }
    auto values = coeffs[e].at("values").get<std::vector<double>>();
    if (values.size() != e + 1) {
      throw InvalidParam("table JSON coefficient count mismatch at " + lambda.str());
    }
    t.entries_.push_back({lambda, std::move(values)});
  }
  t.prepare_orbits();
  return t;
}

PolyTable build_basis(const Multiplicity& k, int max_deg, int quad_order) {
  const int q = k.q;
  if (max_deg > 12 && q > 1) {
    throw InvalidParam("max_deg above 12 is not supported for q > 1");
  }
  if (max_deg > 120) {
    throw InvalidParam("max_deg above 120 is not supported");
  }
  PolyTable table;
  table.k_ = k;
  table.max_deg_ = max_deg;
  table.quad_order_ = quad_order > 0 ? quad_order : default_quad_order(q);
  table.weights_ = enumerate_weights(q, max_deg);
  table.prepare_orbits();

  const AlcoveRule rule = alcove_quadrature(q, table.quad_order_);
  const std::size_t n_nodes = rule.size();
  const std::size_t n_w = table.weights_.size();

  std::vector<double> measure(n_nodes);
  std::vector<double> basis(n_nodes * n_w);  // basis[node * n_w + i] = m_i(node)
  for (std::size_t n = 0; n < n_nodes; ++n) {
    measure[n] = rule.weights[n] * weight_unchecked(rule.node(n), k);
    table.orbit_values(rule.node(n), n_w, std::span<double>(basis.data() + n * n_w, n_w));
  }
  std::vector<double> at_origin(n_w);
  {
    const RealVec zero(q, 0.0);
    table.orbit_values(view(zero), n_w, at_origin);
  }

  // Orthonormal polynomials: values at nodes and coefficients.
  std::vector<std::vector<double>> ortho_vals;
  std::vector<std::vector<double>> ortho_coef;
  auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t n = 0; n < n_nodes; ++n) {
      s += measure[n] * a[n] * b[n];
    }
    return s;
  };

  for (std::size_t i = 0; i < n_w; ++i) {
    std::vector<double> v(n_nodes);
    for (std::size_t n = 0; n < n_nodes; ++n) {
      v[n] = basis[n * n_w + i];
    }
    const double raw_norm_sq = inner(v, v);
    std::vector<double> coef(i + 1, 0.0);
    coef[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const double proj = inner(v, ortho_vals[j]);
        for (std::size_t n = 0; n < n_nodes; ++n) {
          v[n] -= proj * ortho_vals[j][n];
        }
        for (std::size_t c = 0; c <= j; ++c) {
          coef[c] -= proj * ortho_coef[j][c];
        }
      }
    }
    const double norm_sq = inner(v, v);
    if (!(norm_sq > 1e-20 * raw_norm_sq)) {
      throw IllConditioned("Gram-Schmidt breakdown at weight " + table.weights_[i].str() +
                           "; increase the quadrature order");
    }
    double value_at_origin = 0.0;
    for (std::size_t c = 0; c <= i; ++c) {
      value_at_origin += coef[c] * at_origin[c];
    }
    std::vector<double> r_coef(coef);
    for (auto& c : r_coef) {
      c /= value_at_origin;
    }
    table.entries_.push_back({table.weights_[i], std::move(r_coef)});

    const double norm = std::sqrt(norm_sq);
    for (auto& x : v) {
      x /= norm;
    }
    for (auto& c : coef) {
      c /= norm;
    }
    ortho_vals.push_back(std::move(v));
    ortho_coef.push_back(std::move(coef));
  }
  return table;
}

double eval_R(const PolyTable& table, const DominantWeight& lambda, std::span<const double> t) {
  return table.eval(table.index_of(lambda), t);
}

}  // namespace conehyperlab::hopoly
