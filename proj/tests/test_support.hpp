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

// Small helpers shared by the unit tests.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "conehyperlab/matcore.hpp"
#include "conehyperlab/rng.hpp"

namespace testsupport {

using conehyperlab::CMat;
using conehyperlab::cplx;

/// Running mean and standard error of the mean.
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  double n = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    n += 1.0;
  }
  double mean() const { return sum / n; }
  double stderr_() const {
    const double m = mean();
    return std::sqrt(std::max(sum_sq / n - m * m, 0.0) / (n - 1.0));
  }
};

inline CMat random_matrix(int q, conehyperlab::Philox& rng, double scale = 1.0) {
  CMat a(q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      a(i, j) = scale * rng.complex_normal();
    }
  }
  return a;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
  }
  return m;
}

/// Cofactor-expansion determinant (oracle for LU).
inline cplx cofactor_det(const CMat& a) {
  const int n = a.dim();
  if (n == 1) {
    return a(0, 0);
  }
  cplx sum = 0.0;
  for (int col = 0; col < n; ++col) {
    CMat minor(n - 1);
    for (int i = 1; i < n; ++i) {
      int cj = 0;
      for (int j = 0; j < n; ++j) {
        if (j != col) {
          minor(i - 1, cj++) = a(i, j);
        }
      }
    }
    sum += (col % 2 == 0 ? 1.0 : -1.0) * a(0, col) * cofactor_det(minor);
  }
  return sum;
}

}  // namespace testsupport
