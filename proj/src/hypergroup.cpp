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

#include "conehyperlab/hypergroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/quadrature.hpp"

namespace conehyperlab::hypergroup {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kAlcoveTol = 1e-9;

void require_regular(double p, int q) {
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("p must exceed 2q - 1");
  }
}

double factorial(int q) {
  double f = 1.0;
  for (int i = 2; i <= q; ++i) {
    f *= i;
  }
  return f;
}

cplx integer_power(cplx z, long n) {
  cplx base = n < 0 ? std::conj(z) : z;  // |z| = 1
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  cplx acc = 1.0;
  while (e > 0) {
    if (e & 1u) {
      acc *= base;
    }
    base *= base;
    e >>= 1u;
  }
  return acc;
}

// Point with radii r (any order) and phase z on the smallest radius.
ConePoint point_from_radii(RealVec r, cplx z) {
  std::sort(r.begin(), r.end());
  RealVec t;
  for (double x : r) {
    t.push_back(std::acos(std::clamp(x, 0.0, 1.0)));
  }
  return ConePoint(view(t), z);
}

}  // namespace

ConePoint::ConePoint(std::span<const double> t, cplx z) {
  if (t.empty() || t.size() > static_cast<std::size_t>(kMaxRank)) {
    throw InvalidParam("cone point rank must be between 1 and 8");
  }
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!std::isfinite(t[j])) {
      throw DomainError("cone point angle is not finite");
    }
    const double upper = j == 0 ? kHalfPi : t[j - 1];
    if (t[j] > upper + kAlcoveTol || t[j] < -kAlcoveTol) {
      throw DomainError("angles are outside the alcove pi/2 >= t_1 >= ... >= t_q >= 0");
    }
    t_.push_back(std::clamp(t[j], 0.0, j == 0 ? kHalfPi : t_[j - 1]));
  }
  const double mod = std::abs(z);
  if (!(mod > 0.0) || !std::isfinite(mod)) {
    throw InvalidParam("phase must be a finite nonzero complex number");
  }
  z_ = on_axis() ? cplx(1.0, 0.0) : z / mod;
}

ConePoint ConePoint::identity(int q) {
  RealVec t(static_cast<std::size_t>(q), 0.0);
  return ConePoint(view(t), 1.0);
}

RealVec ConePoint::r() const {
  RealVec r;
  for (double x : t_) {
    r.push_back(std::cos(x));
  }
  return r;
}

bool ConePoint::on_axis() const { return t_[0] >= kHalfPi - kAxisEps; }

ConePoint ConePoint::involution() const {
  ConePoint out = *this;
  out.z_ = std::conj(z_);
  return out;
}

ConePoint cone_point(std::span<const double> t, cplx z) { return ConePoint(t, z); }

Character::Character(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l)
    : table_(&table), index_(table.index_of(lambda)), l_(l), integer_l_(l == std::round(l)) {
  if (std::abs(std::abs(l) - std::abs(table.multiplicity().l)) > 1e-12) {
    throw InvalidParam("table was built for a different |l|");
  }
}

cplx Character::operator()(const ConePoint& x) const {
  if (x.q() != table_->q()) {
    throw InvalidParam("point rank does not match the table");
  }
  double radial = table_->eval(index_, view(x.t()));
  const double al = std::abs(l_);
  if (al != 0.0) {
    for (double t : x.t()) {
      radial *= std::pow(std::cos(t), al);
    }
  }
  if (l_ == 0.0) {
    return radial;
  }
  if (integer_l_) {
    return radial * integer_power(x.z(), std::lround(l_));
  }
  if (x.on_axis()) {
    throw BranchError("non-integer l is undefined on the axis t_1 = pi/2");
  }
  return radial * std::polar(1.0, l_ * std::arg(x.z()));
}

cplx eval_character(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l, double p,
                    const ConePoint& x) {
  if (std::abs(table.multiplicity().p - p) > 1e-12) {
    throw InvalidParam("table was built for a different p");
  }
  return Character(table, lambda, l)(x);
}

cplx principal_power(cplx xi, double l) {
  if (xi == cplx(0.0, 0.0)) {
    return l == 0.0 ? 1.0 : 0.0;
  }
  return std::polar(std::pow(std::abs(xi), l), l * std::arg(xi));
}

CMat coupling_matrix(std::span<const double> t, std::span<const double> t2, const CMat& v, const CMat& w) {
  const int q = v.dim();
  CMat d(q);
  for (int i = 0; i < q; ++i) {
    const double si = std::sin(t[i]);
    const double ci = std::cos(t[i]);
    for (int j = 0; j < q; ++j) {
      d(i, j) = -si * std::sin(t2[j]) * w(i, j) + ci * std::cos(t2[j]) * v(i, j);
    }
  }
  return d;
}

RealVec target_angles(const CMat& d) {
  const RealVec sigma = singular_values(d);
  RealVec t;
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    t.push_back(std::acos(std::clamp(*it, 0.0, 1.0)));
  }
  return t;
}

ConePoint target_point(const CMat& d, cplx zz) {
  const RealVec t = target_angles(d);
  return ConePoint(view(t), zz * arg_det(d));
}

std::vector<Estimate> integrate_over_d(int q, double p, std::span<const double> t, std::span<const double> t2,
                                       const ConvConfig& cfg, std::size_t n_out, const DFunction& f) {
  require_regular(p, q);
  if (t.size() != static_cast<std::size_t>(q) || t2.size() != static_cast<std::size_t>(q)) {
    throw InvalidParam("angle vectors must have length q");
  }
  const bool quad = cfg.engine == Engine::quadrature || (cfg.engine == Engine::automatic && q == 1);
  if (!quad) {
    const BallScheme scheme = cfg.scheme;
    return monte_carlo(cfg.mc, n_out, [&](Philox& rng, std::span<cplx> out) {
      const CMat v = sample_haar_unitary(q, true, rng);
      const BallSample ball = sample_ball(q, p, scheme, rng);
      if (ball.weight == 0.0) {
        return 0.0;
      }
      f(coupling_matrix(t, t2, v, ball.w), out);
      return ball.weight;
    });
  }
  if (q != 1) {
    throw InvalidParam("the quadrature engine covers q = 1 only");
  }
  if (cfg.quad_order < 2 || cfg.phase_points < 2) {
    throw InvalidParam("quadrature needs at least two nodes per direction");
  }
  // w = sqrt(u) e^{i phi}: dw = du dphi / 2 and the density is (1 - u)^{p - 2}.
  const auto radial = quadrature::gauss_jacobi(cfg.quad_order, 0.0, 1.0, p - 2.0, 0.0);
  const int m = cfg.phase_points;
  const double a = std::cos(t[0]) * std::cos(t2[0]);
  const double b = std::sin(t[0]) * std::sin(t2[0]);
  std::vector<cplx> acc(n_out, 0.0);
  std::vector<cplx> out(n_out);
  double mass = 0.0;
  CMat d(1);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = std::sqrt(radial.nodes[i]);
    const double wi = radial.weights[i] / m;
    for (int k = 0; k < m; ++k) {
      const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / m;
      d(0, 0) = a - b * std::polar(rho, phi);
      f(d, out);
      for (std::size_t j = 0; j < n_out; ++j) {
        acc[j] += wi * out[j];
      }
      mass += wi;
    }
  }
  std::vector<Estimate> result(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    result[j].value = acc[j] / mass;
    result[j].n_samples = radial.size() * static_cast<std::size_t>(m);
    result[j].seed = cfg.mc.seed;
  }
  return result;
}

ConvMeasure::ConvMeasure(ConePoint x, ConePoint y, double p, ConvConfig cfg)
    : x_(std::move(x)), y_(std::move(y)), p_(p), cfg_(cfg) {
  if (x_.q() != y_.q()) {
    throw InvalidParam("points have different rank");
  }
  require_regular(p_, x_.q());
}

bool ConvMeasure::uses_quadrature() const {
  return cfg_.engine == Engine::quadrature || (cfg_.engine == Engine::automatic && x_.q() == 1);
}

std::vector<std::pair<ConePoint, double>> ConvMeasure::draw(std::size_t n) const {
  const int q = x_.q();
  const cplx zz = x_.z() * y_.z();
  Philox rng(cfg_.mc.seed, (cfg_.mc.stream << 16) | 0xFFFFu);
  std::vector<std::pair<ConePoint, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CMat v = sample_haar_unitary(q, true, rng);
    const BallSample ball = sample_ball(q, p_, cfg_.scheme, rng);
    out.emplace_back(target_point(coupling_matrix(view(x_.t()), view(y_.t()), v, ball.w), zz), ball.weight);
  }
  return out;
}

ConvMeasure convolve(const ConePoint& x, const ConePoint& y, double p, const ConvConfig& cfg) {
  return ConvMeasure(x, y, p, cfg);
}

std::vector<Estimate> integrate_many(const ConvMeasure& m, std::size_t n_out, const PointFunctions& f) {
  const cplx zz = m.x().z() * m.y().z();
  return integrate_over_d(m.x().q(), m.p(), view(m.x().t()), view(m.y().t()), m.config(), n_out,
                          [&](const CMat& d, std::span<cplx> out) { f(target_point(d, zz), out); });
}

Estimate integrate(const ConvMeasure& m, const PointFunction& f) {
  return integrate_many(m, 1, [&](const ConePoint& x, std::span<cplx> out) { out[0] = f(x); })[0];
}

std::vector<Estimate> haar_integrate_many(double p, int q, std::size_t n_out, const PointFunctions& f,
                                          const HaarConfig& cfg) {
  require_regular(p, q);
  if (cfg.phase_points < 1) {
    throw InvalidParam("phase average needs at least one point");
  }
  // u_j = r_j^2: r dr = du / 2, so each coordinate carries (1 - u)^{p-q} / 2.
  const double alpha = p - q;
  const double sym = factorial(q);
  const int m = cfg.phase_points;
  std::vector<cplx> phases(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    phases[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  }

  auto phase_average = [&](const RealVec& u, double weight, std::span<cplx> acc, std::span<cplx> out) {
    RealVec r;
    for (double x : u) {
      r.push_back(std::sqrt(x));
    }
    for (int k = 0; k < m; ++k) {
      f(point_from_radii(r, phases[k]), out);
      for (std::size_t j = 0; j < n_out; ++j) {
        acc[j] += weight / m * out[j];
      }
    }
  };
  auto vandermonde_sq = [&](const RealVec& u) {
    double v = 1.0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        v *= (u[i] - u[j]) * (u[i] - u[j]);
      }
    }
    return v;
  };

  if (cfg.monte_carlo || q > 2) {
    return monte_carlo(
        cfg.mc, n_out,
        [&](Philox& rng, std::span<cplx> out) {
          RealVec u;
          double w = 1.0 / sym;
          for (int j = 0; j < q; ++j) {
            u.push_back(rng.uniform());
            w *= 0.5 * std::pow(1.0 - u.back(), alpha);
          }
          w *= vandermonde_sq(u);
          // One uniform phase per sample; the trapezoid would cost m evaluations.
          RealVec r;
          for (double x : u) {
            r.push_back(std::sqrt(x));
          }
          f(point_from_radii(r, std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi))), out);
          return w;
        },
        Normalization::plain);
  }

  const int order = cfg.order > 0 ? cfg.order : (q == 1 ? 64 : 32);
  const auto rule = quadrature::gauss_jacobi(order, 0.0, 1.0, alpha, 0.0);
  std::vector<cplx> acc(n_out, 0.0);
  std::vector<cplx> tmp(n_out);
  std::size_t nodes = 0;
  std::vector<int> idx(static_cast<std::size_t>(q), 0);
  while (true) {
    RealVec u;
    double w = 1.0 / sym;
    for (int j = 0; j < q; ++j) {
      u.push_back(rule.nodes[idx[j]]);
      w *= 0.5 * rule.weights[idx[j]];
    }
    w *= vandermonde_sq(u);
    if (w != 0.0) {
      phase_average(u, w, acc, tmp);
    }
    ++nodes;
    int j = 0;
    while (j < q && ++idx[j] == order) {
      idx[j++] = 0;
    }
    if (j == q) {
      break;
    }
  }
  std::vector<Estimate> result(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    result[j].value = acc[j];
    result[j].n_samples = nodes * static_cast<std::size_t>(m);
    result[j].seed = cfg.mc.seed;
  }
  return result;
}

Estimate haar_integrate(double p, int q, const PointFunction& f, const HaarConfig& cfg) {
  return haar_integrate_many(p, q, 1, [&](const ConePoint& x, std::span<cplx> out) { out[0] = f(x); }, cfg)[0];
}

Gram haar_gram(double p, int q, const std::vector<Character>& chars, const HaarConfig& cfg) {
  const std::size_t n = chars.size();
  const auto est = haar_integrate_many(
      p, q, n * n,
      [&](const ConePoint& x, std::span<cplx> out) {
        std::vector<cplx> vals(n);
        for (std::size_t a = 0; a < n; ++a) {
          vals[a] = chars[a](x);
        }
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            out[a * n + b] = vals[a] * std::conj(vals[b]);
          }
        }
      },
      cfg);
  Gram g;
  g.n = n;
  for (const auto& e : est) {
    g.value.push_back(e.value);
    g.stderr_.push_back(e.stderr_);
  }
  return g;
}

Estimate quotient_convolve(std::span<const double> t, std::span<const double> t2, double p, const AlcoveFunction& f,
                           const ConvConfig& cfg) {
  const ConePoint x(t, 1.0);
  const ConePoint y(t2, 1.0);
  return integrate_over_d(x.q(), p, view(x.t()), view(y.t()), cfg, 1, [&](const CMat& d, std::span<cplx> out) {
    const RealVec angles = target_angles(d);
    out[0] = f(view(angles));
  })[0];
}

}  // namespace conehyperlab::hypergroup
