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

// Fixed-order quadrature rules on intervals.

#pragma once

#include <vector>

namespace conehyperlab::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Gauss-Jacobi rule on [a, b] for the weight (b - x)^alpha (x - a)^beta.
Rule gauss_jacobi(int n, double a, double b, double alpha, double beta);

/// Gauss-Laguerre rule on [0, inf) for the weight exp(-x).
Rule gauss_laguerre(int n);

/// Equispaced rule with m nodes on the period [a, b), all weights (b - a) / m.
Rule periodic_trapezoid(int m, double a, double b);

}  // namespace conehyperlab::quadrature
