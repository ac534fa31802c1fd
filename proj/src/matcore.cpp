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

#include "conehyperlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/quadrature.hpp"

namespace conehyperlab {

CMat::CMat(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim * dim), cplx{}) {
  if (dim < 1 || dim > kMaxRank) {
    throw InvalidParam("matrix dimension must be in [1, 8], got " + std::to_string(dim));
  }
}

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

CMat CMat::diagonal(std::span<const double> diag) {
  CMat m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) {
    m(i, i) = diag[i];
  }
  return m;
}

CMat CMat::adjoint() const {
  CMat m(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      m(i, j) = std::conj((*this)(j, i));
    }
  }
  return m;
}

CMat CMat::conj() const {
  CMat m = *this;
  for (auto& x : m.a_) {
    x = std::conj(x);
  }
  return m;
}

CMat& CMat::operator+=(const CMat& rhs) {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] += rhs.a_[i];
  }
  return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] -= rhs.a_[i];
  }
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& x : a_) {
    x *= s;
  }
  return *this;
}

double CMat::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : a_) {
    s += std::norm(x);
  }
  return std::sqrt(s);
}

bool CMat::is_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

CMat operator*(const CMat& a, const CMat& b) {
  const int n = a.dim();
  CMat m(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      for (int j = 0; j < n; ++j) {
        m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat a) { return a *= s; }

CMat scale(std::span<const double> left, const CMat& a, std::span<const double> right) {
  CMat m = a;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      m(i, j) *= left[i] * right[j];
    }
  }
  return m;
}

cplx det(const CMat& a) {
  const int n = a.dim();
  if (n == 1) {
    return a(0, 0);
  }
  CMat lu = a;
  cplx result = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
        pivot = r;
      }
    }
    if (lu(pivot, col) == cplx{}) {
      return 0.0;
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(lu(pivot, j), lu(col, j));
      }
      result = -result;
    }
    const cplx d = lu(col, col);
    result *= d;
    for (int r = col + 1; r < n; ++r) {
      const cplx f = lu(r, col) / d;
      for (int j = col + 1; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
      }
    }
  }
  return result;
}

cplx arg_det(const CMat& a) {
  const cplx d = det(a);
  const double m = std::abs(d);
  return m > kSingularEps ? d / m : cplx{1.0, 0.0};
}

HermitianEigen hermitian_eigen(const CMat& h) {
  const int n = h.dim();
  CMat a = h;
  CMat v = CMat::identity(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      total += std::norm(a(i, j));
    }
  }
  const double tiny = 1e-32 * std::max(total, 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        off += std::norm(a(i, j));
      }
    }
    if (off <= tiny) {
      break;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) {
          continue;
        }
        const cplx phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx s_minus = s * std::conj(phase);  // s e^{-i phi}
        const cplx s_plus = s * phase;              // s e^{+i phi}
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + s_minus * akq;
          a(k, q) = -s_plus * akp + c * akq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + s_minus * vkq;
          v(k, q) = -s_plus * vkp + c * vkq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + s_plus * aqk;
          a(q, k) = -s_minus * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<int, kMaxRank> order{};
  for (int i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.begin() + n,
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.vectors = CMat(n);
  for (int j = 0; j < n; ++j) {
    out.values.push_back(a(order[j], order[j]).real());
    for (int i = 0; i < n; ++i) {
      out.vectors(i, j) = v(i, order[j]);
    }
  }
  return out;
}

RealVec singular_values(const CMat& a) {
  if (a.dim() == 1) {
    return RealVec{std::abs(a(0, 0))};
  }
  const HermitianEigen eig = hermitian_eigen(a.adjoint() * a);
  RealVec s;
  for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it) {
    s.push_back(std::sqrt(std::max(*it, 0.0)));
  }
  return s;
}

PolarDecomposition polar_decompose(const CMat& a) {
  if (std::abs(det(a)) <= kSingularEps) {
    throw SingularInput("polar decomposition of a singular matrix");
  }
  const int n = a.dim();
  const HermitianEigen eig = hermitian_eigen(a * a.adjoint());
  RealVec root;
  RealVec inv_root;
  for (double x : eig.values) {
    const double r = std::sqrt(std::max(x, 0.0));
    root.push_back(r);
    inv_root.push_back(1.0 / r);
  }
  const CMat& v = eig.vectors;
  const CMat vh = v.adjoint();
  PolarDecomposition out;
  out.positive = v * scale(view(root), vh, view(RealVec(n, 1.0)));
  out.unitary = v * scale(view(inv_root), vh, view(RealVec(n, 1.0))) * a;
  return out;
}

CMat sample_haar_unitary(int q, bool special, Philox& rng) {
  CMat g(q);
  if (q == 1) {
    if (special) {
      g(0, 0) = 1.0;
    } else {
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      g(0, 0) = cplx(std::cos(angle), std::sin(angle));
    }
    return g;
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  // Gram-Schmidt on columns of a Ginibre matrix; the implied triangular factor
  // has a positive real diagonal, which is the phase-corrected QR.
  for (int j = 0; j < q; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        cplx proj{};
        for (int i = 0; i < q; ++i) {
          proj += std::conj(g(i, k)) * g(i, j);
        }
        for (int i = 0; i < q; ++i) {
          g(i, j) -= proj * g(i, k);
        }
      }
    }
    double norm = 0.0;
    for (int i = 0; i < q; ++i) {
      norm += std::norm(g(i, j));
    }
    norm = std::sqrt(norm);
    for (int i = 0; i < q; ++i) {
      g(i, j) /= norm;
    }
  }
  if (special) {
    const cplx d = det(g);
    const cplx fix = std::conj(d) / std::abs(d);
    for (int i = 0; i < q; ++i) {
      g(i, 0) *= fix;
    }
  }
  return g;
}

double ball_density(const CMat& w, double p, int q) {
  double d = 0.0;
  if (q == 1) {
    d = 1.0 - std::norm(w(0, 0));
    if (d < -1e-9) {
      throw OutOfBall("|w| > 1");
    }
  } else {
    const CMat gram = CMat::identity(q) - w.adjoint() * w;
    const HermitianEigen eig = hermitian_eigen(gram);
    if (eig.values.front() < -1e-9) {
      throw OutOfBall("I - w^* w has eigenvalue " + std::to_string(eig.values.front()));
    }
    d = 1.0;
    for (double x : eig.values) {
      d *= std::max(x, 0.0);
    }
  }
  d = std::max(d, 0.0);
  const double e = p - 2.0 * q;
  if (e == 0.0) {
    return 1.0;
  }
  return std::pow(d, e);
}

namespace {

double spectral_norm_sq(const CMat& w) {
  if (w.dim() == 1) {
    return std::norm(w(0, 0));
  }
  return hermitian_eigen(w.adjoint() * w).values.back();
}

CMat svd_param_draw(int q, double p, Philox& rng) {
  const double shape = p - 2.0 * q + 1.0;  // u ~ Beta(1, shape) before the Vandermonde filter
  RealVec u(q);
  while (true) {
    for (int i = 0; i < q; ++i) {
      u[i] = 1.0 - std::pow(rng.uniform_open0(), 1.0 / shape);
    }
    double accept = 1.0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        accept *= (u[i] - u[j]) * (u[i] - u[j]);
      }
    }
    if (q == 1 || rng.uniform() < accept) {
      break;
    }
  }
  RealVec sigma;
  for (double x : u) {
    sigma.push_back(std::sqrt(x));
  }
  const CMat left = sample_haar_unitary(q, false, rng);
  if (q == 1) {
    CMat w(1);
    w(0, 0) = sigma[0] * left(0, 0);
    return w;
  }
  const CMat right = sample_haar_unitary(q, false, rng);
  return left * scale(view(sigma), right.adjoint(), view(RealVec(q, 1.0)));
}

}  // namespace

BallSample sample_ball(int q, double p, BallScheme scheme, Philox& rng) {
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("ball sampling requires p > 2q - 1");
  }
  BallSample out;
  if (scheme == BallScheme::svd_param) {
    out.w = svd_param_draw(q, p, rng);
    out.weight = 1.0;
    return out;
  }
  CMat w(q);
  while (true) {
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        const double re = rng.uniform(-1.0, 1.0);
        w(i, j) = cplx(re, rng.uniform(-1.0, 1.0));
      }
    }
    if (spectral_norm_sq(w) <= 1.0) {
      break;
    }
  }
  out.weight = ball_density(w, p, q);
  out.w = w;
  return out;
}

double kappa(double p, int q) {
  if (q < 1 || q > kMaxRank) {
    throw InvalidParam("rank out of range");
  }
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("kappa requires p > 2q - 1");
  }
  // Ball integral in squared singular values u_i:
  //   pi^{q^2} * J / L,  J = int_{[0,1]^q} prod (1-u_i)^{p-2q} V(u)^2 du,
  //                      L = int_{[0,inf)^q} exp(-sum u_i) V(u)^2 du,
  // where L calibrates the angular volume against the Gaussian integral pi^{q^2}.
  // Both integrands are polynomial times the rule weight, so q + 2 nodes are exact.
  const int n = q + 2;
  const auto jac = quadrature::gauss_jacobi(n, 0.0, 1.0, p - 2.0 * q, 0.0);
  const auto lag = quadrature::gauss_laguerre(n);
  auto tensor_sum = [&](const quadrature::Rule& rule) {
    std::array<int, kMaxRank> idx{};
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      double vdm = 1.0;
      for (int i = 0; i < q; ++i) {
        w *= rule.weights[idx[i]];
        for (int j = i + 1; j < q; ++j) {
          const double diff = rule.nodes[idx[i]] - rule.nodes[idx[j]];
          vdm *= diff * diff;
        }
      }
      sum += w * vdm;
      int k = 0;
      while (k < q && ++idx[k] == n) {
        idx[k++] = 0;
      }
      if (k == q) {
        break;
      }
    }
    return sum;
  };
  return std::pow(std::numbers::pi, q * q) * tensor_sum(jac) / tensor_sum(lag);
}

KappaEstimate kappa_monte_carlo(double p, int q, std::uint64_t n_samples, std::uint64_t seed) {
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("kappa requires p > 2q - 1");
  }
  Philox rng(seed, 0);
  const double volume = std::pow(2.0, 2.0 * q * q);
  double sum = 0.0;
  double sum_sq = 0.0;
  CMat w(q);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        const double re = rng.uniform(-1.0, 1.0);
        w(i, j) = cplx(re, rng.uniform(-1.0, 1.0));
      }
    }
    double f = 0.0;
    if (spectral_norm_sq(w) <= 1.0) {
      f = volume * ball_density(w, p, q);
    }
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(sum_sq / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / (n - 1.0))};
}

}  // namespace conehyperlab
