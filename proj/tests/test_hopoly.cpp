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

#include <cmath>
#include <numbers>
#include <vector>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/hopoly.hpp"
#include "conehyperlab/jacobi1d.hpp"
#include "conehyperlab/quadrature.hpp"

using namespace conehyperlab;
using namespace conehyperlab::hopoly;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// rho(k) = 1/2 sum_{alpha in R_+} k_alpha alpha, summed root by root.
std::vector<double> rho_by_roots(const Multiplicity& k) {
  const int q = k.q;
  std::vector<double> r(q, 0.0);
  for (int i = 0; i < q; ++i) {
    r[i] += 0.5 * k.k1 * 2.0;  // 2 e_i
    r[i] += 0.5 * k.k2 * 4.0;  // 4 e_i
    for (int j = i + 1; j < q; ++j) {
      // 2e_i + 2e_j and 2e_i - 2e_j
      r[i] += 0.5 * k.k3 * 2.0 + 0.5 * k.k3 * 2.0;
      r[j] += 0.5 * k.k3 * 2.0 - 0.5 * k.k3 * 2.0;
    }
  }
  return r;
}

// Coefficient of m_{(2n)} in R_n^{(a,b)}(cos 2t): (a+b+n+1)_n / ((a+1)_n 4^n).
double jacobi_leading_in_orbit_basis(int n, double a, double b) {
  double c = 1.0;
  for (int j = 0; j < n; ++j) {
    c *= (a + b + n + 1.0 + j) / ((a + 1.0 + j) * 4.0);
  }
  return c;
}

std::vector<double> pt(std::initializer_list<double> v) { return v; }

}  // namespace

TEST_CASE("enumerate_weights") {
  auto w = enumerate_weights(1, 4);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == DominantWeight{0});
  CHECK(w[1] == DominantWeight{2});
  CHECK(w[2] == DominantWeight{4});

  w = enumerate_weights(2, 4);
  const std::vector<DominantWeight> expected{{0, 0}, {2, 0}, {2, 2}, {4, 0}, {4, 2}, {4, 4}};
  CHECK(w == expected);

  for (int q = 1; q <= 3; ++q) {
    const auto list = enumerate_weights(q, 8);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        if (i != j && dominated_by(list[j], list[i])) {
          CHECK_MESSAGE(j < i, list[j].str() << " must precede " << list[i].str());
        }
      }
    }
  }
  CHECK_THROWS_AS(enumerate_weights(2, 3), InvalidParam);
  CHECK_THROWS_AS(DominantWeight({2, 4}), InvalidParam);
  CHECK_THROWS_AS(DominantWeight({3}), InvalidParam);
}

TEST_CASE("rho") {
  CHECK(rho(3.0, 1, 2.0)[0] == doctest::Approx(5.0));
  CHECK(rho(3.0, 1, -2.0)[0] == doctest::Approx(5.0));
  auto r = rho(4.0, 2, 0.0);
  CHECK(r[0] == doctest::Approx(5.0));
  CHECK(r[1] == doctest::Approx(3.0));
  for (int q = 1; q <= 3; ++q) {
    for (double l : {0.0, 1.0, 2.5}) {
      const double p = 2.0 * q + 0.7;
      const auto k = Multiplicity::from_params(p, q, l);
      const auto oracle = rho_by_roots(k);
      const auto got = rho(p, q, l);
      for (int i = 0; i < q; ++i) {
        CHECK(got[i] == doctest::Approx(oracle[i]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("multiplicity") {
  const auto k = Multiplicity::from_params(5.0, 2, -1.0);
  CHECK(k.k1 == 2.0);
  CHECK(k.k2 == 1.5);
  CHECK(k.k3 == 1.0);
  CHECK(k.k1 + k.k2 == doctest::Approx(5.0 - 2 + 0.5));
  CHECK_THROWS_AS(Multiplicity::from_params(3.0, 2, 0.0), InvalidParam);
  CHECK_THROWS_AS(Multiplicity::from_params(1.0, 1, 0.0), InvalidParam);
}

TEST_CASE("c-function") {
  for (int q = 1; q <= 3; ++q) {
    const auto k = Multiplicity::from_params(2.0 * q + 1.3, q, 0.5);
    const auto r = rho(k.p, q, k.l);
    CHECK(c_function(view(r), k) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rank one matches the Jacobi leading coefficient") {
    for (double p : {2.0, 3.0, 4.5}) {
      for (double l : {0.0, 1.0, 2.0}) {
        const auto k = Multiplicity::from_params(p, 1, l);
        const double a = k.k1 + k.k2 - 0.5;
        const double b = k.k2 - 0.5;
        for (int n = 0; n <= 5; ++n) {
          const double arg[] = {2.0 * n + rho(p, 1, l)[0]};
          CHECK(c_function(arg, k) ==
                doctest::Approx(jacobi_leading_in_orbit_basis(n, a, b)).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("continuity in p") {
    const double lam[] = {4.0 + 6.0, 2.0 + 4.0};
    const double c1 = c_function(lam, Multiplicity::from_params(5.0, 2, 1.0));
    const double c2 = c_function(lam, Multiplicity::from_params(5.0 + 1e-6, 2, 1.0));
    CHECK(std::abs(c1 - c2) <= 1e-4);
  }
  SUBCASE("poles are reported") {
    const double lam[] = {2.0, 2.0};
    CHECK_THROWS_AS(c_function(lam, Multiplicity::from_params(5.0, 2, 0.0)), PoleError);
  }
}

TEST_CASE("weight density") {
  const auto k = Multiplicity::from_params(2.0, 1, 0.0);
  CHECK(weight_density(pt({kHalfPi / 2}), k) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(weight_density(pt({0.0}), k) == 0.0);
  const auto k2 = Multiplicity::from_params(5.0, 2, 1.0);
  CHECK(weight_density(pt({0.7, 0.7}), k2) == 0.0);
  CHECK(weight_density(pt({0.9, 0.0}), k2) == 0.0);
  CHECK_THROWS_AS(weight_density(pt({0.3, 0.7}), k2), DomainError);
  CHECK_THROWS_AS(weight_density(pt({1.7}), k), DomainError);
}

TEST_CASE("alcove quadrature") {
  const auto rule = alcove_quadrature(1, 32);
  double s = 0.0;
  double sw = 0.0;
  const auto k = Multiplicity::from_params(2.0, 1, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.node(i)[0];
    s += rule.weights[i] * std::sin(t) * std::cos(t);
    sw += rule.weights[i] * weight_density(rule.node(i), k);
  }
  // [sin^2 t / 2] over [0, pi/2]
  CHECK(std::abs(s - 0.5) <= 1e-12);
  // int_0^{pi/2} sin^3 t cos t dt = 1/4 (substitute u = sin t).
  CHECK(std::abs(sw - 0.25) <= 1e-12);

  // Symmetric polynomial in cos 2t_j of total degree 6 over A_2, against
  // the one-dimensional product it factors into.
  const auto r2 = alcove_quadrature(2, 64);
  double s2 = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double x = std::cos(2 * r2.node(i)[0]);
    const double y = std::cos(2 * r2.node(i)[1]);
    s2 += r2.weights[i] * (x * x * x * y * y * y + 1.0);
  }
  // int_0^{pi/2} cos^3(2t) dt = 0, so the value is (pi/2)^2 / 2.
  CHECK(std::abs(s2 - kHalfPi * kHalfPi / 2) <= 1e-10 * kHalfPi * kHalfPi);

  CHECK_THROWS_AS(alcove_quadrature(4, 16), InvalidParam);
  CHECK_NOTHROW(alcove_quadrature(4, 8, true));
  CHECK_THROWS_AS(alcove_quadrature(2, 4), InvalidParam);
}

TEST_CASE("rank-one polynomials are normalized Jacobi polynomials") {
  double worst = 0.0;
  for (double p : {2.0, 3.0, 4.5}) {
    for (double l : {0.0, 1.0, 2.0}) {
      const auto k = Multiplicity::from_params(p, 1, l);
      const auto table = build_basis(k, 8);
      const double a = k.k1 + k.k2 - 0.5;
      const double b = k.k2 - 0.5;
      for (int n = 0; n <= 4; ++n) {
        for (int i = 0; i < 200; ++i) {
          const double th = kHalfPi * i / 199.0;
          const double t[] = {th};
          const double got = eval_R(table, DominantWeight{2 * n}, t);
          worst = std::max(worst, std::abs(got - jacobi1d::eval_jacobi(n, a, b, std::cos(2 * th))));
        }
      }
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("leading coefficient matches the c-function") {
  for (int q = 1; q <= 2; ++q) {
    for (auto [p, l] : {std::pair{3.0, 0.0}, {3.0, 1.0}, {5.0, 0.0}, {5.0, 2.0}}) {
      if (!(p > 2.0 * q - 1.0)) {
        continue;
      }
      const auto k = Multiplicity::from_params(p, q, l);
      const auto table = build_basis(k, 4);
      const auto r = rho(p, q, l);
      for (const auto& lam : table.weights()) {
        RealVec shifted;
        for (int i = 0; i < q; ++i) {
          shifted.push_back(lam[i] + r[i]);
        }
        const double c = c_function(view(shifted), k);
        const double lead = table.leading_coefficient(lam);
        CHECK_MESSAGE(std::abs(lead - c) <= 1e-6 * std::abs(c), "q=" << q << " p=" << p << " l=" << l
                                                                    << " lambda=" << lam.str());
      }
    }
  }
}

TEST_CASE("basis properties for q = 2") {
  const auto k = Multiplicity::from_params(5.0, 2, 1.0);
  const auto table = build_basis(k, 6);

  SUBCASE("trivial values") {
    for (const auto& lam : table.weights()) {
      CHECK(std::abs(eval_R(table, lam, pt({0.0, 0.0})) - 1.0) <= 1e-10);
      CHECK(table.leading_coefficient(lam) != 0.0);
    }
    CHECK(eval_R(table, DominantWeight{0, 0}, pt({1.1, 0.4})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(eval_R(table, DominantWeight{8, 0}, pt({0.1, 0.0})), MissingWeight);
  }

  SUBCASE("Weyl invariance") {
    double worst = 0.0;
    for (std::size_t e = 0; e < table.weights().size(); ++e) {
      for (auto [a, b] : {std::pair{1.2, 0.3}, {0.8, 0.5}, {1.5, 1.1}}) {
        const double base = table.eval(e, pt({a, b}));
        for (auto alt : {pt({b, a}), pt({-a, b}), pt({a, -b}), pt({-b, -a})}) {
          worst = std::max(worst, std::abs(table.eval(e, alt) - base));
        }
      }
    }
    CHECK(worst <= 1e-12);
  }

  SUBCASE("orthogonality on a finer grid") {
    const auto rule = alcove_quadrature(2, 96);
    const std::size_t n = table.weights().size();
    std::vector<double> gram(n * n, 0.0);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const auto t = rule.node(i);
      // box nodes are not ordered; the weight is symmetric so evaluate on the sorted point
      double sorted[2] = {std::max(t[0], t[1]), std::min(t[0], t[1])};
      const double w = rule.weights[i] * weight_density(sorted, k);
      table.eval_all(t, vals);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          gram[a * n + b] += w * vals[a] * vals[b];
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(gram[a * n + a] > 0.0);
      for (std::size_t b = a + 1; b < n; ++b) {
        CHECK(std::abs(gram[a * n + b]) / std::sqrt(gram[a * n + a] * gram[b * n + b]) <= 1e-8);
      }
    }
  }

  SUBCASE("self-consistency against a higher quadrature order") {
    const auto fine = build_basis(k, 6, 96);
    for (auto t : {pt({1.3, 0.2}), pt({0.6, 0.6}), pt({1.5, 1.0})}) {
      for (const auto& lam : table.weights()) {
        CHECK(std::abs(eval_R(table, lam, t) - eval_R(fine, lam, t)) <= 1e-8);
      }
    }
  }

  SUBCASE("quadrature doubling leaves the Gram diagonal stable") {
    const auto coarse = build_basis(k, 4, 32);
    const auto finer = build_basis(k, 4, 64);
    for (const auto& lam : coarse.weights()) {
      for (auto t : {pt({1.0, 0.5}), pt({1.4, 0.1})}) {
        CHECK(std::abs(eval_R(coarse, lam, t) - eval_R(finer, lam, t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("smooth dependence on p") {
  const double h = 1e-3;
  const DominantWeight lam{4, 2};
  const double t[] = {1.1, 0.4};
  double v[3];
  for (int i = 0; i < 3; ++i) {
    const auto table = build_basis(Multiplicity::from_params(5.0 + (i - 1) * h, 2, 1.0), 6);
    v[i] = eval_R(table, lam, t);
  }
  const double second = (v[0] - 2.0 * v[1] + v[2]) / (h * h);
  CHECK(std::abs(second) <= 10.0);
}

TEST_CASE("rank three build") {
  const auto table = build_basis(Multiplicity::from_params(6.0, 3, 0.0), 4);
  CHECK(table.weights().size() == 10);
  for (std::size_t e = 0; e < table.weights().size(); ++e) {
    CHECK(std::abs(table.eval(e, pt({0.0, 0.0, 0.0})) - 1.0) <= 1e-10);
  }
}

TEST_CASE("boundedness is reported on a grid") {
  // Recorded, not asserted: the maximum of |R_lambda| on a grid is attained at t = 0.
  const auto table = build_basis(Multiplicity::from_params(3.0, 1, 1.0), 8);
  int violations = 0;
  for (std::size_t e = 0; e < table.weights().size(); ++e) {
    for (int i = 0; i < 50; ++i) {
      const double t[] = {kHalfPi * i / 49.0};
      if (std::abs(table.eval(e, t)) > 1.0 + 1e-10) {
        ++violations;
      }
    }
  }
  MESSAGE("grid points with |R| > 1: " << violations);
}

TEST_CASE("JSON round trip is exact") {
  const auto table = build_basis(Multiplicity::from_params(5.0, 2, 1.0), 4);
  const auto doc = table.to_json();
  CHECK(doc.at("q") == 2);
  CHECK(doc.at("coeffs").size() == table.weights().size());
  const auto text = doc.dump();
  const auto back = PolyTable::from_json(nlohmann::json::parse(text));
  CHECK(back.to_json().dump() == text);
  for (std::size_t e = 0; e < table.entries().size(); ++e) {
    CHECK(back.entries()[e].values == table.entries()[e].values);
  }
}
