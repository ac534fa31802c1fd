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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/jacobi.hpp>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/jacobi1d.hpp"
#include "conehyperlab/quadrature.hpp"

using namespace conehyperlab;
using jacobi1d::eval_disk;
using jacobi1d::eval_jacobi;

namespace {

// Terminating 2F1 sum in long double; accurate for the small degrees it is used at.
double series_jacobi(int n, double a, double b, double x) {
  const long double y = 0.5L * (1.0L - x);
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int j = 0; j < n; ++j) {
    term *= (static_cast<long double>(a) + b + n + 1 + j) * (j - n) / ((a + 1.0L + j) * (j + 1.0L)) * y;
    sum += term;
  }
  return static_cast<double>(sum);
}

// Boost's unnormalized P_n divided by P_n(1) = Gamma(n+a+1) / (Gamma(a+1) n!).
double boost_normalized(int n, double a, double b, double x) {
  const double at_one = std::exp(std::lgamma(n + a + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n + 1.0));
  return boost::math::jacobi(static_cast<unsigned>(n), a, b, x) / at_one;
}

}  // namespace

TEST_CASE("normalized Jacobi polynomials") {
  for (int n = 0; n <= 8; ++n) {
    CHECK(eval_jacobi(n, 1.3, 0.4, 1.0) == 1.0);
  }
  for (double x : {-1.0, -0.3, 0.2, 0.9}) {
    const double a = 2.5;
    const double b = 0.5;
    CHECK(eval_jacobi(1, a, b, x) == doctest::Approx(1.0 - (a + b + 2.0) * (1.0 - x) / (2.0 * (a + 1.0))));
  }
  CHECK(std::abs(eval_jacobi(4, 2.0, 1.5, 0.3) - series_jacobi(4, 2.0, 1.5, 0.3)) <= 1e-12);
  for (int n = 0; n <= 8; ++n) {
    for (double x : {-0.95, -0.4, 0.0, 0.37, 0.8}) {
      CHECK(std::abs(eval_jacobi(n, 3.0, 0.0, x) - series_jacobi(n, 3.0, 0.0, x)) <= 1e-12);
      CHECK(std::abs(eval_jacobi(n, 0.5, 2.5, x) - series_jacobi(n, 0.5, 2.5, x)) <= 1e-12);
    }
  }
  for (int n : {10, 25, 50}) {
    for (double x : {-1.0, -0.7, 0.1, 0.99}) {
      CHECK(std::abs(eval_jacobi(n, 0.0, 0.0, x) - boost_normalized(n, 0.0, 0.0, x)) <= 1e-10);
      CHECK(std::abs(eval_jacobi(n, 3.5, 1.0, x) - boost_normalized(n, 3.5, 1.0, x)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(eval_jacobi(2, -1.0, 0.0, 0.5), InvalidParam);
  CHECK_THROWS_AS(eval_jacobi(2, 0.0, -1.5, 0.5), InvalidParam);
}

TEST_CASE("Jacobi evaluation stays finite and bounded") {
  for (int n = 0; n <= 50; n += 7) {
    for (double a : {0.0, 5.0, 20.0}) {
      for (double b : {0.0, 3.0, 20.0}) {
        for (int i = 0; i <= 40; ++i) {
          const double x = -1.0 + i / 20.0;
          const double v = eval_jacobi(n, a, b, x);
          CHECK(std::isfinite(v));
          // max(a, b) >= -1/2, so |R_n| <= max(1, |R_n(-1)|) = max(1, (b+1)_n / (a+1)_n).
          double bound = 1.0;
          for (int j = 0; j < n; ++j) {
            bound *= (b + 1.0 + j) / (a + 1.0 + j);
          }
          CHECK(std::abs(v) <= std::max(1.0, bound) * (1.0 + 1e-10));
        }
      }
    }
  }
}

TEST_CASE("Jacobi orthogonality by Gauss-Legendre") {
  const auto gl = quadrature::gauss_legendre(512, -1.0, 1.0);
  const double a = 2.0;
  const double b = 1.0;  // integer exponents keep the integrand polynomial
  auto ip = [&](int n, int m) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double x = gl.nodes[i];
      s += gl.weights[i] * eval_jacobi(n, a, b, x) * eval_jacobi(m, a, b, x) * std::pow(1.0 - x, a) *
           std::pow(1.0 + x, b);
    }
    return s;
  };
  for (int n = 0; n <= 6; ++n) {
    for (int m = n + 1; m <= 6; ++m) {
      CHECK(std::abs(ip(n, m)) / std::sqrt(ip(n, n) * ip(m, m)) <= 1e-9);
    }
  }
}

TEST_CASE("disk polynomials") {
  for (int l = -3; l <= 3; ++l) {
    for (double th : {0.0, 0.7, 2.9}) {
      const auto z = std::polar(1.0, th);
      CHECK(std::abs(eval_disk(0, l, 2.5, z) - std::pow(z, l)) <= 1e-14);
      for (int n = 0; n <= 4; ++n) {
        CHECK(std::abs(eval_disk(n, l, 3.0, z)) == doctest::Approx(1.0));
      }
    }
  }
  CHECK(eval_disk(2, 1, 3.0, 0.0) == std::complex<double>(0.0));
  CHECK(eval_disk(2, -2, 3.0, 0.0) == std::complex<double>(0.0));
  // Conjugation symmetry: phi_{n,-l}(z) = conj(phi_{n,l}(z)).
  const std::complex<double> z(0.3, -0.5);
  CHECK(std::abs(eval_disk(3, -2, 4.0, z) - std::conj(eval_disk(3, 2, 4.0, z))) <= 1e-15);
}
