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

#include "conehyperlab/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <string>

#include "conehyperlab/errors.hpp"

namespace conehyperlab::quadrature {

namespace {

struct FixedWorkspaceDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

Rule from_gsl(const gsl_integration_fixed_type* type, int n, double a, double b, double alpha,
              double beta) {
  if (n < 1) {
    throw InvalidParam("quadrature order must be positive, got " + std::to_string(n));
  }
  gsl_set_error_handler_off();
  std::unique_ptr<gsl_integration_fixed_workspace, FixedWorkspaceDeleter> ws(
      gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, alpha, beta));
  if (!ws) {
    throw InvalidParam("cannot build quadrature rule of order " + std::to_string(n));
  }
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  Rule rule;
  rule.nodes.assign(x, x + n);
  rule.weights.assign(w, w + n);
  return rule;
}

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
  return from_gsl(gsl_integration_fixed_legendre, n, a, b, 0.0, 0.0);
}

Rule gauss_jacobi(int n, double a, double b, double alpha, double beta) {
  if (alpha <= -1.0 || beta <= -1.0) {
    throw InvalidParam("Gauss-Jacobi exponents must exceed -1");
  }
  return from_gsl(gsl_integration_fixed_jacobi, n, a, b, alpha, beta);
}

Rule gauss_laguerre(int n) { return from_gsl(gsl_integration_fixed_laguerre, n, 0.0, 1.0, 0.0, 0.0); }

Rule periodic_trapezoid(int m, double a, double b) {
  if (m < 1) {
    throw InvalidParam("trapezoid needs at least one node");
  }
  Rule rule;
  rule.nodes.resize(m);
  rule.weights.assign(m, (b - a) / m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = a + (b - a) * i / m;
  }
  return rule;
}

}  // namespace conehyperlab::quadrature
