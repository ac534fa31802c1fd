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

#include "conehyperlab/errors.hpp"
#include "conehyperlab/matcore.hpp"
#include "test_support.hpp"

using namespace conehyperlab;
using testsupport::cofactor_det;
using testsupport::max_abs_diff;
using testsupport::Moments;
using testsupport::random_matrix;

namespace {

// Unitary polar factor by Newton iteration U <- (U + U^{-*}) / 2 (2x2 only).
CMat newton_polar_unitary(const CMat& a) {
  CMat u = a;
  for (int it = 0; it < 100; ++it) {
    const cplx d = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    CMat inv(2);
    inv(0, 0) = u(1, 1) / d;
    inv(0, 1) = -u(0, 1) / d;
    inv(1, 0) = -u(1, 0) / d;
    inv(1, 1) = u(0, 0) / d;
    u = cplx(0.5) * (u + inv.adjoint());
  }
  return u;
}

}  // namespace

TEST_CASE("det on identity, diagonal and cofactor oracle") {
  CHECK(std::abs(det(CMat::identity(2)) - cplx(1.0)) < 1e-15);
  CMat d(2);
  d(0, 0) = cplx(0.0, 2.0);
  d(1, 1) = 3.0;
  CHECK(std::abs(det(d) - cplx(0.0, 6.0)) < 1e-15);
  CHECK(det(CMat(3)) == cplx(0.0));

  Philox rng(11, 0);
  for (int q = 2; q <= 4; ++q) {
    for (int rep = 0; rep < 50; ++rep) {
      const CMat a = random_matrix(q, rng);
      const cplx oracle = cofactor_det(a);
      CHECK(std::abs(det(a) - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)));
    }
  }
}

TEST_CASE("singular values: simple cases and quadratic-formula oracle") {
  auto s = singular_values(CMat::identity(2));
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(1.0));

  const double diag[] = {0.2, 0.5};
  s = singular_values(CMat::diagonal(diag));
  CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s[1] == doctest::Approx(0.2).epsilon(1e-14));

  Philox rng(12, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const CMat a = random_matrix(2, rng);
    const CMat g = a.adjoint() * a;
    const double tr = (g(0, 0) + g(1, 1)).real();
    const double dt = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * dt, 0.0));
    const double big = std::sqrt(0.5 * (tr + disc));
    const double small = std::sqrt(std::max(0.5 * (tr - disc), 0.0));
    s = singular_values(a);
    CHECK(std::abs(s[0] - big) <= 1e-10);
    CHECK(std::abs(s[1] - small) <= 1e-10);
  }
}

TEST_CASE("singular values are invariant under unitary multiplication") {
  Philox rng(13, 0);
  double worst = 0.0;
  for (int q = 1; q <= 4; ++q) {
    for (int rep = 0; rep < 50; ++rep) {
      const CMat a = random_matrix(q, rng);
      const CMat u = sample_haar_unitary(q, false, rng);
      const CMat v = sample_haar_unitary(q, false, rng);
      const auto s1 = singular_values(a);
      const auto s2 = singular_values(u * a * v);
      for (int i = 0; i < q; ++i) {
        worst = std::max(worst, std::abs(s1[i] - s2[i]));
      }
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("hermitian eigen reconstructs its input") {
  Philox rng(14, 0);
  for (int q = 2; q <= 6; ++q) {
    const CMat a = random_matrix(q, rng);
    const CMat h = a + a.adjoint();
    const auto eig = hermitian_eigen(h);
    const CMat back = eig.vectors * CMat::diagonal(view(eig.values)) * eig.vectors.adjoint();
    CHECK(max_abs_diff(back, h) <= 1e-12 * h.frobenius_norm());
    for (int i = 1; i < q; ++i) {
      CHECK(eig.values[i - 1] <= eig.values[i]);
    }
  }
}

TEST_CASE("arg_det conventions") {
  CHECK(std::abs(arg_det(CMat::identity(2)) - cplx(1.0)) < 1e-15);
  CMat d = CMat::identity(2);
  d(0, 0) = cplx(0.0, 1.0);
  CHECK(std::abs(arg_det(d) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(arg_det(CMat(2)) == cplx(1.0));
  CHECK(arg_det(CMat(1)) == cplx(1.0));
}

TEST_CASE("polar decomposition") {
  Philox rng(15, 0);
  SUBCASE("unitary input") {
    const CMat v = sample_haar_unitary(3, false, rng);
    const auto pd = polar_decompose(v);
    CHECK(max_abs_diff(pd.positive, CMat::identity(3)) <= 1e-12);
    CHECK(max_abs_diff(pd.unitary, v) <= 1e-12);
  }
  SUBCASE("positive definite input") {
    const CMat a = random_matrix(3, rng);
    const CMat p = a * a.adjoint() + CMat::identity(3);
    const auto pd = polar_decompose(p);
    CHECK(max_abs_diff(pd.positive, p) <= 1e-12);
    CHECK(max_abs_diff(pd.unitary, CMat::identity(3)) <= 1e-12);
  }
  SUBCASE("reconstruction and Newton-iteration oracle") {
    for (int rep = 0; rep < 100; ++rep) {
      const CMat a = random_matrix(2, rng);
      const auto pd = polar_decompose(a);
      CHECK((pd.positive * pd.unitary - a).frobenius_norm() <= 1e-10);
      const CMat u_oracle = newton_polar_unitary(a);
      const CMat r_oracle = a * u_oracle.adjoint();
      CHECK(max_abs_diff(pd.positive, r_oracle) <= 1e-9);
    }
  }
  SUBCASE("singular input") { CHECK_THROWS_AS(polar_decompose(CMat(2)), SingularInput); }
}

TEST_CASE("Haar sampling") {
  Philox rng(16, 0);
  CHECK(sample_haar_unitary(1, true, rng)(0, 0) == cplx(1.0));
  for (int q = 1; q <= 4; ++q) {
    for (int rep = 0; rep < 100; ++rep) {
      const CMat u = sample_haar_unitary(q, rep % 2 == 0, rng);
      CHECK((u.adjoint() * u - CMat::identity(q)).frobenius_norm() <= 1e-12);
      if (rep % 2 == 0) {
        CHECK(std::abs(det(u) - cplx(1.0)) <= 1e-12);
      }
    }
  }
  SUBCASE("second moment of an entry") {
    for (int q : {2, 3}) {
      Moments m;
      for (int s = 0; s < 100000; ++s) {
        m.add(std::norm(sample_haar_unitary(q, true, rng)(0, 0)));
      }
      CHECK(std::abs(m.mean() - 1.0 / q) <= 3.0 * m.stderr_());
    }
  }
}

TEST_CASE("ball density") {
  CHECK(ball_density(CMat(2), 5.0, 2) == doctest::Approx(1.0));
  Philox rng(17, 0);
  const CMat u = sample_haar_unitary(2, false, rng);
  CHECK(ball_density(u, 5.0, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CMat w(1);
  w(0, 0) = std::polar(0.6, 0.3);
  CHECK(ball_density(w, 3.0, 1) == doctest::Approx(0.64).epsilon(1e-14));
  CHECK_THROWS_AS(ball_density(cplx(2.0) * CMat::identity(2), 5.0, 2), OutOfBall);

  for (int rep = 0; rep < 50; ++rep) {
    const auto s = sample_ball(2, 4.5, BallScheme::svd_param, rng);
    const CMat a = sample_haar_unitary(2, false, rng);
    const CMat b = sample_haar_unitary(2, false, rng);
    CHECK(std::abs(ball_density(s.w, 4.5, 2) - ball_density(a * s.w * b, 4.5, 2)) <= 1e-10);
  }
}

TEST_CASE("ball sampling: radial moment oracle for q=1, p=3") {
  for (auto scheme : {BallScheme::rejection, BallScheme::svd_param}) {
    Philox rng(18, static_cast<int>(scheme));
    double sw = 0.0;
    Moments num;
    Moments den;
    for (int s = 0; s < 200000; ++s) {
      const auto b = sample_ball(1, 3.0, scheme, rng);
      CHECK_MESSAGE(std::norm(b.w(0, 0)) <= 1.0 + 1e-9, "sample outside ball");
      num.add(b.weight * std::norm(b.w(0, 0)));
      den.add(b.weight);
      sw += b.weight;
    }
    // Ratio estimator with delta-method error bar.
    const double ratio = num.mean() / den.mean();
    const double se = std::sqrt(num.stderr_() * num.stderr_() +
                                ratio * ratio * den.stderr_() * den.stderr_()) /
                      den.mean();
    CHECK(std::abs(ratio - 1.0 / 3.0) <= 3.0 * se + 1e-12);
    CHECK(sw > 0.0);
  }
}

TEST_CASE("ball sampling: schemes agree for q=2") {
  // f(w) = tr(w^* w) + Re w_00; estimated under both schemes.
  auto f = [](const CMat& w) { return (w.adjoint() * w)(0, 0).real() + (w.adjoint() * w)(1, 1).real(); };
  double est[2];
  double se[2];
  for (int s = 0; s < 2; ++s) {
    const auto scheme = s == 0 ? BallScheme::rejection : BallScheme::svd_param;
    Philox rng(19, s);
    Moments num;
    Moments den;
    for (int i = 0; i < 100000; ++i) {
      const auto b = sample_ball(2, 5.0, scheme, rng);
      CHECK(hermitian_eigen(CMat::identity(2) - b.w.adjoint() * b.w).values[0] >= -1e-9);
      num.add(b.weight * f(b.w));
      den.add(b.weight);
    }
    est[s] = num.mean() / den.mean();
    se[s] = std::sqrt(num.stderr_() * num.stderr_() + est[s] * est[s] * den.stderr_() * den.stderr_()) /
            den.mean();
  }
  CHECK(std::abs(est[0] - est[1]) <= 4.0 * std::hypot(se[0], se[1]));
}

TEST_CASE("kappa") {
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    CHECK(std::abs(kappa(p, 1) - std::numbers::pi / (p - 1.0)) <= 1e-9);
  }
  CHECK(kappa(3.0, 1) == doctest::Approx(std::numbers::pi / 2));
  CHECK(kappa(2.0, 1) == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_AS(kappa(3.0, 2), InvalidParam);
  CHECK_THROWS_AS(kappa(1.0, 1), InvalidParam);

  const double quad = kappa(5.0, 2);
  const auto mc = kappa_monte_carlo(5.0, 2, 2000000, 20);
  CHECK(std::abs(quad - mc.value) <= 4.0 * mc.stderr_);
  // Volume of the ball (exponent 0) for q=1 is pi.
  const auto mc1 = kappa_monte_carlo(2.0, 1, 200000, 21);
  CHECK(std::abs(mc1.value - std::numbers::pi) <= 4.0 * mc1.stderr_);
}
