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

// Small dense complex matrices (q x q, q <= 8) and the matrix-ball samplers
// used by the cone convolution.

#pragma once

#include <boost/container/static_vector.hpp>

#include <complex>
#include <cstdint>
#include <span>

#include "conehyperlab/rng.hpp"

namespace conehyperlab {

using cplx = std::complex<double>;

inline constexpr int kMaxRank = 8;

/// Fixed-capacity real vector of length <= kMaxRank.
using RealVec = boost::container::static_vector<double, kMaxRank>;

inline std::span<const double> view(const RealVec& v) { return {v.data(), v.size()}; }

/// Threshold below which |det| is treated as zero.
inline constexpr double kSingularEps = 1e-12;

class CMat {
 public:
  CMat() = default;
  explicit CMat(int dim);

  static CMat identity(int dim);
  static CMat diagonal(std::span<const double> diag);

  int dim() const { return dim_; }

  cplx& operator()(int i, int j) { return a_[i * dim_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[i * dim_ + j]; }

  CMat adjoint() const;
  CMat conj() const;

  CMat& operator+=(const CMat& rhs);
  CMat& operator-=(const CMat& rhs);
  CMat& operator*=(cplx s);

  double frobenius_norm() const;
  bool is_finite() const;

 private:
  int dim_ = 0;
  boost::container::static_vector<cplx, kMaxRank * kMaxRank> a_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat a);

/// diag(left) * a * diag(right).
CMat scale(std::span<const double> left, const CMat& a, std::span<const double> right);

/// Determinant by LU with partial pivoting; exactly 0 for a zero pivot.
cplx det(const CMat& a);

/// Unit-modulus phase of det(a); 1 when |det(a)| <= kSingularEps.
cplx arg_det(const CMat& a);

struct HermitianEigen {
  RealVec values;  // ascending
  CMat vectors;    // columns are eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
HermitianEigen hermitian_eigen(const CMat& h);

/// Singular values (square roots of the eigenvalues of a^* a), nonincreasing.
RealVec singular_values(const CMat& a);

struct PolarDecomposition {
  CMat positive;  // (a a^*)^{1/2}
  CMat unitary;
};

/// a = positive * unitary. Throws SingularInput when |det a| <= kSingularEps.
PolarDecomposition polar_decompose(const CMat& a);

/// Haar-distributed element of U(q), or of SU(q) when `special` is set.
CMat sample_haar_unitary(int q, bool special, Philox& rng);

/// det(I - w^* w)^(p - 2q). Throws OutOfBall if I - w^* w has an eigenvalue below -1e-9.
double ball_density(const CMat& w, double p, int q);

enum class BallScheme { rejection, svd_param };

struct BallSample {
  CMat w;
  double weight = 0.0;
};

/// Draws w from the matrix ball with an importance weight so that weighted
/// expectations follow det(I - w^* w)^(p - 2q) dw.
///
/// rejection: uniform on the ball (box rejection), weight = ball_density.
/// svd_param: w = u diag(s) v^* with Haar u, v and singular values drawn
///            from the induced density, weight = 1.
BallSample sample_ball(int q, double p, BallScheme scheme, Philox& rng);

/// kappa_p = integral of det(I - w^* w)^(p - 2q) over the ball, by exact
/// Gauss quadrature in the squared singular values.
double kappa(double p, int q);

struct KappaEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Box Monte Carlo estimate of kappa_p (independent of the quadrature route).
KappaEstimate kappa_monte_carlo(double p, int q, std::uint64_t n_samples, std::uint64_t seed);

}  // namespace conehyperlab
