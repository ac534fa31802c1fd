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

#include "conehyperlab/jacobi1d.hpp"

#include <cmath>
#include <cstdlib>

#include "conehyperlab/errors.hpp"

namespace conehyperlab::jacobi1d {

double eval_jacobi(int n, double alpha, double beta, double x) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw InvalidParam("Jacobi parameters must exceed -1");
  }
  if (n < 0) {
    throw InvalidParam("Jacobi degree must be nonnegative");
  }
  if (x == 1.0 || n == 0) {
    return 1.0;
  }
  // Three-term recurrence carried on R_k = P_k / P_k(1). The terminating 2F1 sum
  // alternates in sign and loses all digits near x = -1 once n passes ~25.
  const double ab = alpha + beta;
  double r0 = 1.0;
  double r1 = 1.0 - (ab + 2.0) * (1.0 - x) / (2.0 * (alpha + 1.0));
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double den = 2.0 * k * (k + ab) * (c - 2.0);
    const double a_k = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta) / den;
    const double b_k = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c / den;
    const double r2 = a_k * k / (k + alpha) * r1 - b_k * k * (k - 1.0) / ((k + alpha) * (k - 1.0 + alpha)) * r0;
    r0 = r1;
    r1 = r2;
  }
  return r1;
}

std::complex<double> eval_disk(int n, int l, double p, std::complex<double> z) {
  const double r = std::abs(z);
  const int al = std::abs(l);
  const double radial = std::pow(r, al) * eval_jacobi(n, p - 1.0, al, 2.0 * r * r - 1.0);
  if (l == 0) {
    return radial;
  }
  const std::complex<double> phase = r > 0.0 ? z / r : std::complex<double>(1.0, 0.0);
  const std::complex<double> ph = l > 0 ? phase : std::conj(phase);
  std::complex<double> power = 1.0;
  for (int i = 0; i < al; ++i) {
    power *= ph;
  }
  return power * radial;
}

}  // namespace conehyperlab::jacobi1d
