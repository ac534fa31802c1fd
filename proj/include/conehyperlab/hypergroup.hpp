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

// The cone X_q as a commutative hypergroup: points, characters, the
// convolution of point masses, the Haar measure and the quotient on A_q.

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "conehyperlab/hopoly.hpp"
#include "conehyperlab/matcore.hpp"
#include "conehyperlab/montecarlo.hpp"

namespace conehyperlab::hypergroup {

/// Points with t_1 this close to pi/2 lie on the axis where the phase is void.
inline constexpr double kAxisEps = 1e-9;

/// A point [cos t, z] of the cone, t in the alcove A_q, |z| = 1.
class ConePoint {
 public:
  ConePoint() = default;
  ConePoint(std::span<const double> t, cplx z);

  static ConePoint identity(int q);

  int q() const { return static_cast<int>(t_.size()); }
  const RealVec& t() const { return t_; }
  cplx z() const { return z_; }
  RealVec r() const;
  bool on_axis() const;

  /// [r, z] -> [r, conj z]
  ConePoint involution() const;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;

 private:
  RealVec t_;
  cplx z_{1.0, 0.0};
};

ConePoint cone_point(std::span<const double> t, cplx z);

/// phi_{lambda,l}([cos t, z]) = z^l prod cos^{|l|} t_j R_lambda(t).
class Character {
 public:
  Character(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l);

  cplx operator()(const ConePoint& x) const;

  const hopoly::DominantWeight& lambda() const { return table_->weights()[index_]; }
  double l() const { return l_; }

 private:
  const hopoly::PolyTable* table_;
  std::size_t index_;
  double l_;
  bool integer_l_;
};

cplx eval_character(const hopoly::PolyTable& table, const hopoly::DominantWeight& lambda, double l, double p,
                    const ConePoint& x);

/// Principal-branch power; zero maps to zero for l > 0.
cplx principal_power(cplx xi, double l);

enum class Engine { automatic, monte_carlo, quadrature };

struct ConvConfig {
  McConfig mc;
  BallScheme scheme = BallScheme::svd_param;
  Engine engine = Engine::automatic;  // automatic: quadrature for q = 1
  int quad_order = 64;                // radial Gauss-Jacobi nodes, q = 1
  int phase_points = 128;
};

/// d = -sin t * w * sin t2 + cos t * v * cos t2 with diagonal sin/cos factors.
CMat coupling_matrix(std::span<const double> t, std::span<const double> t2, const CMat& v, const CMat& w);

/// [sigma(d), zz * arg det d] as a cone point.
ConePoint target_point(const CMat& d, cplx zz);

/// Arguments of the alcove point arccos sigma(d), ordered as in A_q.
RealVec target_angles(const CMat& d);

using DFunction = std::function<void(const CMat& d, std::span<cplx> out)>;

/// Integrates functions of d over SU(q) x B_q against the normalized ball
/// density. One estimate per output slot.
std::vector<Estimate> integrate_over_d(int q, double p, std::span<const double> t, std::span<const double> t2,
                                       const ConvConfig& cfg, std::size_t n_out, const DFunction& f);

class ConvMeasure {
 public:
  ConvMeasure(ConePoint x, ConePoint y, double p, ConvConfig cfg);

  const ConePoint& x() const { return x_; }
  const ConePoint& y() const { return y_; }
  double p() const { return p_; }
  const ConvConfig& config() const { return cfg_; }
  bool uses_quadrature() const;

  /// n independent draws from one stream; weights are the importance weights.
  std::vector<std::pair<ConePoint, double>> draw(std::size_t n) const;

 private:
  ConePoint x_;
  ConePoint y_;
  double p_;
  ConvConfig cfg_;
};

ConvMeasure convolve(const ConePoint& x, const ConePoint& y, double p, const ConvConfig& cfg = {});

using PointFunction = std::function<cplx(const ConePoint&)>;
using PointFunctions = std::function<void(const ConePoint&, std::span<cplx> out)>;

Estimate integrate(const ConvMeasure& m, const PointFunction& f);
std::vector<Estimate> integrate_many(const ConvMeasure& m, std::size_t n_out, const PointFunctions& f);

struct HaarConfig {
  int order = 0;  // Gauss-Jacobi nodes per radial coordinate; 0 picks a default
  int phase_points = 128;
  bool monte_carlo = false;  // forced for q >= 3
  McConfig mc;
};

/// Integral over X_q against prod r_j (1 - r_j^2)^{p-q} prod (r_i^2 - r_j^2)^2 dr dz,
/// dz the normalized measure on the circle. Unnormalized.
Estimate haar_integrate(double p, int q, const PointFunction& f, const HaarConfig& cfg = {});
std::vector<Estimate> haar_integrate_many(double p, int q, std::size_t n_out, const PointFunctions& f,
                                          const HaarConfig& cfg = {});

struct Gram {
  std::size_t n = 0;
  std::vector<cplx> value;  // row-major <f_a, f_b>
  std::vector<double> stderr_;
};

Gram haar_gram(double p, int q, const std::vector<Character>& chars, const HaarConfig& cfg = {});

using AlcoveFunction = std::function<double(std::span<const double> t)>;

Estimate quotient_convolve(std::span<const double> t, std::span<const double> t2, double p, const AlcoveFunction& f,
                           const ConvConfig& cfg = {});

}  // namespace conehyperlab::hypergroup
