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

// Normalized one-dimensional Jacobi polynomials and disk polynomials.

#pragma once

#include <complex>

namespace conehyperlab::jacobi1d {

/// R_n^{(alpha,beta)}(x) = 2F1(alpha+beta+n+1, -n; alpha+1; (1-x)/2), so R_n(1) = 1.
/// Throws InvalidParam unless alpha > -1 and beta > -1.
double eval_jacobi(int n, double alpha, double beta, double x);

/// Disk polynomial z^l r^{|l|} R_n^{(p-1,|l|)}(2r^2 - 1) at z = r e^{i arg}.
std::complex<double> eval_disk(int n, int l, double p, std::complex<double> z);

}  // namespace conehyperlab::jacobi1d
