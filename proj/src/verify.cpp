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

#include "conehyperlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "conehyperlab/errors.hpp"
#include "conehyperlab/jacobi1d.hpp"
#include "conehyperlab/quadrature.hpp"

namespace conehyperlab::verify {

using hopoly::DominantWeight;
using hopoly::Multiplicity;
using hopoly::PolyTable;
using hypergroup::Character;
using hypergroup::ConePoint;
using hypergroup::ConvConfig;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;

nlohmann::json vec_json(std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); }

nlohmann::json cplx_json(cplx z) { return {z.real(), z.imag()}; }

const char* engine_name(const ConvConfig& cfg, int q) {
  const bool quad = cfg.engine == hypergroup::Engine::quadrature ||
                    (cfg.engine == hypergroup::Engine::automatic && q == 1);
  return quad ? "quadrature" : "monte_carlo";
}

const char* scheme_name(BallScheme s) { return s == BallScheme::rejection ? "rejection" : "svd-param"; }

void require_table(const PolyTable& table, double p, double l) {
  if (std::abs(table.multiplicity().p - p) > 1e-12 ||
      std::abs(std::abs(table.multiplicity().l) - std::abs(l)) > 1e-12) {
    throw InvalidParam("table was built for different (p, l)");
  }
}

bool nondegenerate(std::span<const double> t) { return t[0] < kHalfPi - hypergroup::kAxisEps; }

double product(std::span<const double> v, double (*f)(double)) {
  double out = 1.0;
  for (double x : v) {
    out *= f(x);
  }
  return out;
}

ConePoint random_point(int q, Philox& rng) {
  RealVec t;
  for (int j = 0; j < q; ++j) {
    t.push_back(rng.uniform(0.05, kHalfPi - 0.05));
  }
  std::sort(t.begin(), t.end(), std::greater<>());
  return ConePoint(view(t), std::polar(1.0, rng.uniform(-kPi, kPi)));
}

// Support of psi -> a^2 - b^2 - s^2 + 2 b s cos(psi) on [-pi, pi].
struct PsiSupport {
  double a;
  double b;
  double s;
  double x0 = 0.0;
  double psi0 = 0.0;
  bool empty = false;
  bool full = false;

  PsiSupport(double a_, double b_, double s_) : a(a_), b(b_), s(s_) {
    if (s <= 0.0 || b <= 0.0) {
      full = a * a - b * b - s * s > 0.0;
      empty = !full;
      return;
    }
    x0 = (s * s + b * b - a * a) / (2.0 * b * s);
    if (x0 >= 1.0) {
      empty = true;
    } else if (x0 <= -1.0) {
      full = true;
    } else {
      psi0 = std::acos(x0);
    }
  }

  double limit() const { return full ? kPi : psi0; }

  // Positive part of the quadratic, cancellation-free near the cutoff.
  double base(double psi) const {
    psi = std::abs(psi);
    if (full) {
      return std::max(0.0, a * a - b * b - s * s + 2.0 * b * s * std::cos(psi));
    }
    if (psi >= psi0) {
      return 0.0;
    }
    return 4.0 * b * s * std::sin(0.5 * (psi0 + psi)) * std::sin(0.5 * (psi0 - psi));
  }
};

constexpr double kTanhSinhTol = 1e-11;

// int_0^pi (.)_+^{gamma} sin^{2 beta} psi dpsi
double psi_integral_sin(const PsiSupport& sup, double gamma, double beta) {
  if (sup.empty) {
    return 0.0;
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double psi) {
    const double base = sup.base(psi);
    if (base <= 0.0) {
      return 0.0;
    }
    return std::pow(base, gamma) * std::pow(std::sin(psi), 2.0 * beta);
  };
  return ts.integrate(f, 0.0, sup.limit(), kTanhSinhTol);
}

// int_{-pi}^{pi} e^{i beta psi} (.)_+^{gamma} dpsi
cplx psi_integral_exp(const PsiSupport& sup, double gamma, double beta) {
  if (sup.empty) {
    return 0.0;
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  const double lim = sup.limit();
  auto weight = [&](double psi) {
    const double base = sup.base(psi);
    return base <= 0.0 ? 0.0 : std::pow(base, gamma);
  };
  const double re = ts.integrate([&](double psi) { return std::cos(beta * psi) * weight(psi); }, -lim, lim,
                                 kTanhSinhTol);
  const double im = ts.integrate([&](double psi) { return std::sin(beta * psi) * weight(psi); }, -lim, lim,
                                 kTanhSinhTol);
  return {re, im};
}

void require_koornwinder_params(double alpha, double beta) {
  if (!(beta >= 0.0) || !(alpha > beta)) {
    throw InvalidParam("requires alpha > beta >= 0");
  }
}

void require_angle(double theta) {
  if (!(theta > 0.0 && theta < kHalfPi)) {
    throw InvalidParam("angles must lie strictly inside (0, pi/2)");
  }
}

}  // namespace

nlohmann::json CheckReport::to_json() const {
  return {{"name", name},
          {"params", params},
          {"lhs_re", lhs.real()},
          {"lhs_im", lhs.imag()},
          {"rhs_re", rhs.real()},
          {"rhs_im", rhs.imag()},
          {"abs_err", abs_err},
          {"tolerance", tolerance},
          {"passed", passed},
          {"n_samples", n_samples},
          {"seed", seed}};
}

CheckReport make_report(std::string name, nlohmann::json params, cplx lhs, cplx rhs, double tolerance,
                        std::uint64_t n_samples, std::uint64_t seed) {
  if (!(tolerance > 0.0)) {
    throw InvalidParam("tolerance must be positive");
  }
  CheckReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.passed = r.abs_err <= tolerance;
  r.n_samples = n_samples;
  r.seed = seed;
  return r;
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports) {
  auto arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
  }
  return arr;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "name,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,tol,passed,n_samples,seed\n";
  for (const auto& r : reports) {
    std::string params = r.params.dump();
    std::string quoted;
    for (char c : params) {
      quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    os << r.name << ",\"" << quoted << "\"," << r.lhs.real() << ',' << r.lhs.imag() << ',' << r.rhs.real() << ','
       << r.rhs.imag() << ',' << r.abs_err << ',' << r.tolerance << ',' << (r.passed ? "true" : "false") << ','
       << r.n_samples << ',' << r.seed << '\n';
  }
  return os.str();
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

nlohmann::json point_json(const ConePoint& x) { return {{"t", vec_json(view(x.t()))}, {"z", cplx_json(x.z())}}; }

std::vector<CheckReport> check_product_cone_many(const PolyTable& table, std::span<const DominantWeight> lambdas,
                                                 double l, const ConePoint& x, const ConePoint& y,
                                                 const ConvConfig& cfg) {
  const double p = table.multiplicity().p;
  std::vector<Character> chars;
  for (const auto& lam : lambdas) {
    chars.emplace_back(table, lam, l);
  }
  const auto m = hypergroup::convolve(x, y, p, cfg);
  const auto est = hypergroup::integrate_many(m, chars.size(), [&](const ConePoint& z, std::span<cplx> out) {
    for (std::size_t i = 0; i < chars.size(); ++i) {
      out[i] = chars[i](z);
    }
  });
  std::vector<CheckReport> reports;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const double tol = 4.0 * est[i].stderr_ + (m.uses_quadrature() ? kQuadratureTol : 0.0) + kRoundingTol;
    nlohmann::json params{{"q", table.q()},
                          {"p", p},
                          {"l", l},
                          {"lambda", chars[i].lambda().str()},
                          {"x", point_json(x)},
                          {"y", point_json(y)},
                          {"engine", engine_name(cfg, table.q())},
                          {"scheme", scheme_name(cfg.scheme)}};
    reports.push_back(make_report("product_cone", std::move(params), chars[i](x) * chars[i](y), est[i].value, tol,
                                  est[i].n_samples, est[i].seed));
  }
  return reports;
}

CheckReport check_product_cone(const PolyTable& table, const DominantWeight& lambda, double l, double p,
                               const ConePoint& x, const ConePoint& y, const ConvConfig& cfg) {
  require_table(table, p, l);
  return check_product_cone_many(table, std::span(&lambda, 1), l, x, y, cfg)[0];
}

std::vector<CheckReport> check_product_jacobi_many(const PolyTable& table, std::span<const DominantWeight> lambdas,
                                                   double l, std::span<const double> t, std::span<const double> t2,
                                                   const ConvConfig& cfg) {
  if (!(l >= 0.0)) {
    throw InvalidParam("the real-l formula is stated for l >= 0");
  }
  require_table(table, table.multiplicity().p, l);
  const ConePoint x(t, 1.0);
  const ConePoint y(t2, 1.0);
  if (!nondegenerate(t) || !nondegenerate(t2)) {
    throw DegenerateArgument("t_1 and t2_1 must stay below pi/2");
  }
  const int q = table.q();
  const double p = table.multiplicity().p;
  std::vector<std::size_t> idx;
  for (const auto& lam : lambdas) {
    idx.push_back(table.index_of(lam));
  }
  const double norm = product(view(x.t()), [](double a) { return std::cos(a); }) *
                      product(view(y.t()), [](double a) { return std::cos(a); });
  const auto est = hypergroup::integrate_over_d(
      q, p, view(x.t()), view(y.t()), cfg, idx.size(), [&](const CMat& d, std::span<cplx> out) {
        const RealVec angles = hypergroup::target_angles(d);
        const double xi = hypergroup::principal_power(det(d) / norm, l).real();
        for (std::size_t i = 0; i < idx.size(); ++i) {
          out[i] = table.eval(idx[i], view(angles)) * xi;
        }
      });
  const bool quad = std::string(engine_name(cfg, q)) == "quadrature";
  std::vector<CheckReport> reports;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double lhs = table.eval(idx[i], view(x.t())) * table.eval(idx[i], view(y.t()));
    const double tol = 4.0 * est[i].stderr_ + (quad ? kQuadratureTol : 0.0) + kRoundingTol;
    nlohmann::json params{{"q", q},
                          {"p", p},
                          {"l", l},
                          {"lambda", lambdas[i].str()},
                          {"t", vec_json(view(x.t()))},
                          {"t2", vec_json(view(y.t()))},
                          {"engine", engine_name(cfg, q)},
                          {"scheme", scheme_name(cfg.scheme)}};
    reports.push_back(make_report("product_jacobi", std::move(params), lhs, est[i].value, tol, est[i].n_samples,
                                  est[i].seed));
  }
  return reports;
}

CheckReport check_product_jacobi(const PolyTable& table, const DominantWeight& lambda, double l, double p,
                                 std::span<const double> t, std::span<const double> t2, const ConvConfig& cfg) {
  require_table(table, p, l);
  return check_product_jacobi_many(table, std::span(&lambda, 1), l, t, t2, cfg)[0];
}

CheckReport check_disk_product(int n, int l, double p, cplx x1, cplx x2, int order, int phase_points) {
  if (!(p > 1.0)) {
    throw InvalidParam("disk product formula needs p > 1");
  }
  const double r1 = std::abs(x1);
  const double r2 = std::abs(x2);
  if (r1 > 1.0 + 1e-12 || r2 > 1.0 + 1e-12) {
    throw DomainError("points must lie in the closed unit disk");
  }
  const cplx z1 = r1 > 0.0 ? x1 / r1 : cplx(1.0);
  const cplx z2 = r2 > 0.0 ? x2 / r2 : cplx(1.0);
  const double s1 = std::sqrt(std::max(0.0, 1.0 - r1 * r1));
  const double s2 = std::sqrt(std::max(0.0, 1.0 - r2 * r2));
  const double c1 = std::min(r1, 1.0);
  const double c2 = std::min(r2, 1.0);
  // dw = du dphi / 2 with u = |w|^2
  const auto rule = quadrature::gauss_jacobi(order, 0.0, 1.0, p - 2.0, 0.0);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double rho = std::sqrt(rule.nodes[i]);
    cplx inner = 0.0;
    for (int k = 0; k < phase_points; ++k) {
      const cplx w = std::polar(rho, -kPi + 2.0 * kPi * k / phase_points);
      inner += jacobi1d::eval_disk(n, l, p, z1 * z2 * (c1 * c2 - w * s1 * s2));
    }
    sum += 0.5 * rule.weights[i] * inner * (2.0 * kPi / phase_points);
  }
  const cplx rhs = (p - 1.0) / kPi * sum;
  const cplx lhs = jacobi1d::eval_disk(n, l, p, x1) * jacobi1d::eval_disk(n, l, p, x2);
  nlohmann::json params{{"n", n}, {"l", l}, {"p", p}, {"x1", cplx_json(x1)}, {"x2", cplx_json(x2)}};
  return make_report("disk_product", std::move(params), lhs, rhs, 1e-7, rule.size() * phase_points, 0);
}

double koornwinder_constant(double alpha, double beta) {
  require_koornwinder_params(alpha, beta);
  const auto rs = quadrature::gauss_jacobi(8, 0.0, 1.0, alpha - beta - 1.0, beta);
  const auto rx = quadrature::gauss_jacobi(8, -1.0, 1.0, beta - 0.5, beta - 0.5);
  double ms = 0.0;
  double mx = 0.0;
  for (double w : rs.weights) {
    ms += w;
  }
  for (double w : rx.weights) {
    mx += w;
  }
  return 1.0 / (0.5 * ms * mx);
}

bool rank1_branch_continuous(double beta, double theta, double theta2, double t) {
  if (beta == std::round(beta)) {
    return true;
  }
  const PsiSupport sup(std::sin(theta) * std::sin(theta2), std::cos(theta) * std::cos(theta2), t);
  return !sup.full;
}

CheckReport check_rank1_identity(double alpha, double beta, double theta, double theta2, double t) {
  if (!(alpha > std::max(beta, 0.0)) || !(beta >= 0.0)) {
    throw InvalidParam("requires alpha > max(beta, 0) and beta >= 0");
  }
  require_angle(theta);
  require_angle(theta2);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParam("t must lie in [0, 1]");
  }
  const double a = std::sin(theta) * std::sin(theta2);
  const double b = std::cos(theta) * std::cos(theta2);
  const PsiSupport sup(a, b, t);
  nlohmann::json params{{"alpha", alpha}, {"beta", beta}, {"theta", theta}, {"theta2", theta2}, {"t", t},
                        {"support", sup.empty ? "empty" : (sup.full ? "full" : "arc")}};
  if (sup.empty) {
    return make_report("rank1_identity", std::move(params), 0.0, 0.0, 1e-6, 0, 0);
  }
  const double c = koornwinder_constant(alpha, beta);
  const double lhs = c * std::pow(t * b, beta) * psi_integral_sin(sup, alpha - beta - 1.0, beta);
  const cplx rhs = alpha / kPi * psi_integral_exp(sup, alpha - 1.0, beta);
  params["c_alpha_beta"] = c;
  return make_report("rank1_identity", std::move(params), lhs, rhs, 1e-6, 0, 0);
}

std::vector<CheckReport> check_koornwinder(int n, double alpha, double beta, double theta, double theta2) {
  require_koornwinder_params(alpha, beta);
  require_angle(theta);
  require_angle(theta2);
  if (n < 0) {
    throw InvalidParam("degree must be nonnegative");
  }
  const double a = std::sin(theta) * std::sin(theta2);
  const double b = std::cos(theta) * std::cos(theta2);
  const double c = koornwinder_constant(alpha, beta);
  auto R = [&](double x) { return jacobi1d::eval_jacobi(n, alpha, beta, x); };
  const double lhs = R(std::cos(2.0 * theta)) * R(std::cos(2.0 * theta2));

  // s = r^2 carries (1-s)^{alpha-beta-1} s^beta; x = cos(phi) carries (1-x^2)^{beta-1/2}.
  const auto rs = quadrature::gauss_jacobi(40, 0.0, 1.0, alpha - beta - 1.0, beta);
  const auto rx = quadrature::gauss_jacobi(40, -1.0, 1.0, beta - 0.5, beta - 0.5);
  double j3 = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double s = rs.nodes[i];
    for (std::size_t k = 0; k < rx.size(); ++k) {
      const double mod2 = b * b + a * a * s + 2.0 * a * b * std::sqrt(s) * rx.nodes[k];
      j3 += rs.weights[i] * rx.weights[k] * R(2.0 * mod2 - 1.0);
    }
  }
  j3 *= 0.5 * c;

  // Kernel rewrite: outer integral over t, split where the psi-support changes shape.
  boost::math::quadrature::tanh_sinh<double> ts;
  auto outer = [&](double s) {
    const PsiSupport sup(a, b, s);
    return R(2.0 * s * s - 1.0) * psi_integral_sin(sup, alpha - beta - 1.0, beta) * std::pow(s, 2.0 * beta + 1.0);
  };
  double j4 = 0.0;
  if (a > b) {
    j4 += ts.integrate(outer, 0.0, a - b, kTanhSinhTol);
  }
  j4 += ts.integrate(outer, std::abs(b - a), a + b, kTanhSinhTol);
  j4 *= c / std::pow(a, 2.0 * alpha);

  nlohmann::json params{{"n", n}, {"alpha", alpha}, {"beta", beta}, {"theta", theta}, {"theta2", theta2},
                        {"c_alpha_beta", c}};
  std::vector<CheckReport> out;
  out.push_back(make_report("koornwinder", params, lhs, j3, 1e-7, rs.size() * rx.size(), 0));
  out.push_back(make_report("koornwinder_kernel", params, j3, j4, 1e-6, 0, 0));
  return out;
}

CheckReport check_kernel_form(const PolyTable& table, const DominantWeight& lambda, double l, double p,
                              std::span<const double> t, std::span<const double> t2, const McConfig& mc) {
  require_table(table, p, l);
  const int q = table.q();
  if (t.size() != static_cast<std::size_t>(q) || t2.size() != static_cast<std::size_t>(q)) {
    throw InvalidParam("angle vectors must have length q");
  }
  const ConePoint x(t, 1.0);
  const ConePoint y(t2, 1.0);
  for (int j = 0; j < q; ++j) {
    if (!(t[j] > 0.0 && t[j] < kHalfPi && t2[j] > 0.0 && t2[j] < kHalfPi)) {
      throw DegenerateArgument("kernel form needs every angle strictly inside (0, pi/2)");
    }
  }
  const std::size_t idx = table.index_of(lambda);
  RealVec inv_sin1;
  RealVec inv_sin2;
  RealVec cos1;
  RealVec cos2;
  for (int j = 0; j < q; ++j) {
    inv_sin1.push_back(1.0 / std::sin(t[j]));
    inv_sin2.push_back(1.0 / std::sin(t2[j]));
    cos1.push_back(std::cos(t[j]));
    cos2.push_back(std::cos(t2[j]));
  }
  const double exponent = p - 2.0 * q;
  const auto est = monte_carlo(mc, 1, [&](Philox& rng, std::span<cplx> out) {
    // r uniform on {0 < r < I}: the box |r_ij| <= 1/2 off the diagonal contains it.
    CMat r(q);
    HermitianEigen eig;
    while (true) {
      for (int i = 0; i < q; ++i) {
        r(i, i) = rng.uniform();
        for (int j = i + 1; j < q; ++j) {
          r(i, j) = cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
          r(j, i) = std::conj(r(i, j));
        }
      }
      eig = hermitian_eigen(r);
      if (eig.values.front() > 0.0 && eig.values.back() < 1.0) {
        break;
      }
    }
    const CMat u = sample_haar_unitary(q, false, rng);
    const CMat v = sample_haar_unitary(q, true, rng);
    RealVec root;
    double det_r = 1.0;
    for (double lam : eig.values) {
      root.push_back(std::sqrt(lam));
      det_r *= lam;
    }
    const CMat sqrt_r = eig.vectors * CMat::diagonal(view(root)) * eig.vectors.adjoint();
    const CMat w = scale(view(inv_sin1), scale(view(cos1), v, view(cos2)) - sqrt_r * u, view(inv_sin2));
    const HermitianEigen h = hermitian_eigen(CMat::identity(q) - w.adjoint() * w);
    if (h.values.front() <= 0.0) {
      return 0.0;
    }
    double det_h = 1.0;
    for (double lam : h.values) {
      det_h *= lam;
    }
    RealVec angles;  // eigenvalues ascending, so the angles descend
    for (double s : root) {
      angles.push_back(std::acos(std::min(s, 1.0)));
    }
    out[0] = table.eval(idx, view(angles));
    return std::pow(det_r, 0.5 * l) * hypergroup::principal_power(det(u), l).real() * std::pow(det_h, exponent);
  });
  const double lhs = table.eval(idx, view(x.t())) * table.eval(idx, view(y.t()));
  nlohmann::json params{{"q", q}, {"p", p}, {"l", l}, {"lambda", lambda.str()}, {"t", vec_json(view(x.t()))},
                        {"t2", vec_json(view(y.t()))}};
  return make_report("kernel_form", std::move(params), lhs, est[0].value, 5.0 * est[0].stderr_ + kRoundingTol,
                     est[0].n_samples, est[0].seed);
}

std::vector<CheckReport> check_orthogonality(double p, int q, int l_max, int max_deg,
                                             const hypergroup::HaarConfig& cfg) {
  if (l_max < 0) {
    throw InvalidParam("l_max must be nonnegative");
  }
  std::vector<PolyTable> tables;
  for (int al = 0; al <= l_max; ++al) {
    tables.push_back(hopoly::build_basis(Multiplicity::from_params(p, q, al), max_deg));
  }
  std::vector<Character> chars;
  for (int l = -l_max; l <= l_max; ++l) {
    for (const auto& lam : tables[std::abs(l)].weights()) {
      chars.emplace_back(tables[std::abs(l)], lam, l);
    }
  }
  const auto g = hypergroup::haar_gram(p, q, chars, cfg);
  const bool quad = !(cfg.monte_carlo || q > 2);
  std::vector<CheckReport> reports;
  const std::size_t n = g.n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double scale_ab = std::sqrt(g.value[a * n + a].real() * g.value[b * n + b].real());
      const double tol = quad ? 1e-6 : 4.0 * g.stderr_[a * n + b] / scale_ab + kRoundingTol;
      nlohmann::json params{{"p", p},
                            {"q", q},
                            {"lambda_a", chars[a].lambda().str()},
                            {"l_a", chars[a].l()},
                            {"lambda_b", chars[b].lambda().str()},
                            {"l_b", chars[b].l()},
                            {"engine", quad ? "quadrature" : "monte_carlo"}};
      reports.push_back(make_report("orthogonality", std::move(params), g.value[a * n + b] / scale_ab, 0.0, tol,
                                    cfg.monte_carlo || q > 2 ? cfg.mc.n_samples : 0, cfg.mc.seed));
    }
  }
  return reports;
}

std::vector<CheckReport> check_axioms(int q, double p, int l, const ConvConfig& cfg) {
  const PolyTable table = hopoly::build_basis(Multiplicity::from_params(p, q, l), 2);
  DominantWeight::Parts parts(static_cast<std::size_t>(q), 0);
  parts[0] = 2;
  const Character phi(table, DominantWeight(std::span<const int>(parts.data(), parts.size())), l);
  const auto f_phi = [&](const ConePoint& z) { return phi(z); };

  Philox prng(cfg.mc.seed, 0xA0000);
  const ConePoint x = random_point(q, prng);
  const ConePoint y = random_point(q, prng);
  const ConePoint w = random_point(q, prng);
  const ConePoint e = ConePoint::identity(q);

  auto stream_cfg = [&](std::uint64_t k) {
    ConvConfig c = cfg;
    c.mc.stream = cfg.mc.stream * 64 + k;
    return c;
  };
  auto base_params = [&](const char* what) {
    return nlohmann::json{{"axiom", what}, {"q", q}, {"p", p}, {"l", l}, {"lambda", phi.lambda().str()},
                          {"engine", engine_name(cfg, q)}, {"scheme", scheme_name(cfg.scheme)}};
  };
  auto quad_tol = [&](const hypergroup::ConvMeasure& m) { return m.uses_quadrature() ? kQuadratureTol : 0.0; };

  std::vector<CheckReport> out;

  {
    const auto m = hypergroup::convolve(x, e, p, stream_cfg(1));
    const auto est = hypergroup::integrate(m, f_phi);
    auto params = base_params("identity_right");
    params["x"] = point_json(x);
    out.push_back(make_report("axioms", params, est.value, phi(x), 4.0 * est.stderr_ + quad_tol(m) + kRoundingTol,
                              est.n_samples, est.seed));
    const auto m2 = hypergroup::convolve(e, x, p, stream_cfg(2));
    const auto est2 = hypergroup::integrate(m2, f_phi);
    params["axiom"] = "identity_left";
    out.push_back(make_report("axioms", params, est2.value, phi(x),
                              4.0 * est2.stderr_ + quad_tol(m2) + kRoundingTol, est2.n_samples, est2.seed));
  }
  {
    auto params = base_params("involution_character");
    params["x"] = point_json(x);
    out.push_back(make_report("axioms", params, phi(x.involution()), std::conj(phi(x)), kRoundingTol, 0, 0));

    // (delta_x * delta_y)^- = delta_xbar * delta_ybar, tested on a function that is not involution invariant.
    auto f = [&](const ConePoint& z) { return phi(z) + 0.3 * z.t()[0]; };
    const auto m1 = hypergroup::convolve(x.involution(), y.involution(), p, stream_cfg(3));
    const auto m2 = hypergroup::convolve(x, y, p, stream_cfg(4));
    const auto lhs = hypergroup::integrate(m1, f);
    const auto rhs = hypergroup::integrate(m2, [&](const ConePoint& z) { return f(z.involution()); });
    params["axiom"] = "involution_measure";
    params["y"] = point_json(y);
    out.push_back(make_report("axioms", params, lhs.value, rhs.value,
                              4.0 * std::hypot(lhs.stderr_, rhs.stderr_) + quad_tol(m1) + kRoundingTol,
                              lhs.n_samples, lhs.seed));
  }
  {
    const auto m1 = hypergroup::convolve(x, y, p, stream_cfg(5));
    const auto m2 = hypergroup::convolve(y, x, p, stream_cfg(6));
    const auto a = hypergroup::integrate(m1, f_phi);
    const auto b = hypergroup::integrate(m2, f_phi);
    auto params = base_params("commutativity");
    params["x"] = point_json(x);
    params["y"] = point_json(y);
    out.push_back(make_report("axioms", params, a.value, b.value,
                              4.0 * std::hypot(a.stderr_, b.stderr_) + quad_tol(m1) + kRoundingTol, a.n_samples,
                              a.seed));
  }
  {
    const auto m = hypergroup::convolve(x, y, p, stream_cfg(7));
    const auto est = hypergroup::integrate(m, [](const ConePoint&) { return cplx(1.0); });
    auto params = base_params("mass");
    out.push_back(make_report("axioms", params, est.value, 1.0, kRoundingTol, est.n_samples, est.seed));
  }
  {
    // Nested sampling of (x * y) * w and x * (y * w).
    auto nested = [&](const ConePoint& first, const ConePoint& second, const ConePoint& third, bool left,
                      std::uint64_t stream) {
      McConfig mc = stream_cfg(stream).mc;
      return monte_carlo(mc, 1, [&](Philox& rng, std::span<cplx> res) {
        const CMat v1 = sample_haar_unitary(q, true, rng);
        const BallSample b1 = sample_ball(q, p, cfg.scheme, rng);
        const CMat v2 = sample_haar_unitary(q, true, rng);
        const BallSample b2 = sample_ball(q, p, cfg.scheme, rng);
        if (left) {
          const ConePoint inner = hypergroup::target_point(
              hypergroup::coupling_matrix(view(first.t()), view(second.t()), v1, b1.w), first.z() * second.z());
          res[0] = phi(hypergroup::target_point(
              hypergroup::coupling_matrix(view(inner.t()), view(third.t()), v2, b2.w), inner.z() * third.z()));
        } else {
          const ConePoint inner = hypergroup::target_point(
              hypergroup::coupling_matrix(view(second.t()), view(third.t()), v1, b1.w), second.z() * third.z());
          res[0] = phi(hypergroup::target_point(
              hypergroup::coupling_matrix(view(first.t()), view(inner.t()), v2, b2.w), first.z() * inner.z()));
        }
        return b1.weight * b2.weight;
      })[0];
    };
    const auto left = nested(x, y, w, true, 8);
    const auto right = nested(x, y, w, false, 9);
    const cplx triple = phi(x) * phi(y) * phi(w);
    auto params = base_params("associativity_left");
    params["engine"] = "monte_carlo";
    params["x"] = point_json(x);
    params["y"] = point_json(y);
    params["w"] = point_json(w);
    out.push_back(make_report("axioms", params, left.value, triple, 4.0 * left.stderr_ + kRoundingTol,
                              left.n_samples, left.seed));
    params["axiom"] = "associativity_right";
    out.push_back(make_report("axioms", params, right.value, triple, 4.0 * right.stderr_ + kRoundingTol,
                              right.n_samples, right.seed));
    params["axiom"] = "associativity";
    out.push_back(make_report("axioms", params, left.value, right.value,
                              4.0 * std::hypot(left.stderr_, right.stderr_) + kRoundingTol, left.n_samples,
                              left.seed));
  }
  {
    RealVec zero(static_cast<std::size_t>(q), 0.0);
    const ConePoint a(view(zero), std::polar(1.0, prng.uniform(-kPi, kPi)));
    const ConePoint b(view(zero), std::polar(1.0, prng.uniform(-kPi, kPi)));
    const std::size_t n = std::min<std::uint64_t>(cfg.mc.n_samples, 20000);
    const auto samples = hypergroup::convolve(a, b, p, stream_cfg(10)).draw(n);
    const cplx target = a.z() * b.z();
    double var = 0.0;
    for (const auto& [pt, wt] : samples) {
      const RealVec r = pt.r();
      var += std::norm(pt.z() * r[0] - target);
      for (std::size_t j = 1; j < r.size(); ++j) {
        var += (r[j] - 1.0) * (r[j] - 1.0);
      }
    }
    var /= static_cast<double>(n);
    auto params = base_params("torus_subgroup");
    params["z"] = cplx_json(a.z());
    params["z2"] = cplx_json(b.z());
    out.push_back(make_report("axioms", params, var, 0.0, 1e-20, n, cfg.mc.seed));
  }
  return out;
}

nlohmann::json PositivityReport::to_json() const {
  return {{"p", p},
          {"q", q},
          {"l", l},
          {"t", vec_json(view(t))},
          {"t2", vec_json(view(t2))},
          {"resolution", resolution},
          {"cells", cells},
          {"min_kernel", min_kernel},
          {"neg_mass_fraction", neg_mass_fraction},
          {"noise_floor", noise_floor},
          {"cone_neg_mass_fraction", cone_neg_mass_fraction},
          {"n_samples", n_samples},
          {"seed", seed}};
}

PositivityReport positivity_scan(double p, int q, double l, std::span<const double> t, std::span<const double> t2,
                                 int resolution, const ConvConfig& cfg) {
  if (!(l >= 0.0)) {
    throw InvalidParam("positivity scan needs l >= 0");
  }
  if (resolution < 1 || q > 3) {
    throw InvalidParam("resolution must be positive and q at most 3");
  }
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("p must exceed 2q - 1");
  }
  const ConePoint x(t, 1.0);
  const ConePoint y(t2, 1.0);
  if (x.q() != q || y.q() != q) {
    throw InvalidParam("angle vectors must have length q");
  }
  if (!nondegenerate(t) || !nondegenerate(t2)) {
    throw DegenerateArgument("t_1 and t2_1 must stay below pi/2");
  }
  std::size_t n_cells = 1;
  for (int j = 0; j < q; ++j) {
    n_cells *= static_cast<std::size_t>(resolution);
  }
  std::vector<double> sum_k(n_cells, 0.0);
  std::vector<double> sum_k2(n_cells, 0.0);
  std::vector<double> sum_w(n_cells, 0.0);
  double total_w = 0.0;
  const double norm = product(view(x.t()), [](double a) { return std::cos(a); }) *
                      product(view(y.t()), [](double a) { return std::cos(a); });
  Philox rng(cfg.mc.seed, (cfg.mc.stream << 16) | 0xFFFEu);
  const std::uint64_t n = cfg.mc.n_samples;
  for (std::uint64_t i = 0; i < n; ++i) {
    const CMat v = sample_haar_unitary(q, true, rng);
    const BallSample ball = sample_ball(q, p, cfg.scheme, rng);
    const CMat d = hypergroup::coupling_matrix(view(x.t()), view(y.t()), v, ball.w);
    const RealVec angles = hypergroup::target_angles(d);
    std::size_t cell = 0;
    for (int j = 0; j < q; ++j) {
      const int bin = std::min(resolution - 1, static_cast<int>(angles[j] / kHalfPi * resolution));
      cell = cell * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(bin);
    }
    const double k = hypergroup::principal_power(det(d) / norm, l).real() * ball.weight;
    sum_k[cell] += k;
    sum_k2[cell] += k * k;
    sum_w[cell] += ball.weight;
    total_w += ball.weight;
  }
  PositivityReport rep;
  rep.p = p;
  rep.q = q;
  rep.l = l;
  rep.t = x.t();
  rep.t2 = y.t();
  rep.resolution = resolution;
  rep.n_samples = n;
  rep.seed = cfg.mc.seed;
  const double mean_w = total_w / static_cast<double>(n);
  double neg = 0.0;
  double abs_mass = 0.0;
  double var = 0.0;
  double cone_neg = 0.0;
  double cone_abs = 0.0;
  rep.min_kernel = 0.0;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double m = sum_k[c] / total_w;
    rep.cells.push_back(m);
    rep.min_kernel = c == 0 ? m : std::min(rep.min_kernel, m);
    neg += std::max(0.0, -m);
    abs_mass += std::abs(m);
    const double mk = sum_k[c] / static_cast<double>(n);
    const double cell_var = std::max(0.0, sum_k2[c] / static_cast<double>(n) - mk * mk) / static_cast<double>(n);
    var += cell_var / (mean_w * mean_w);
    const double mw = sum_w[c] / total_w;
    cone_neg += std::max(0.0, -mw);
    cone_abs += std::abs(mw);
  }
  rep.neg_mass_fraction = abs_mass > 0.0 ? neg / abs_mass : 0.0;
  rep.noise_floor = abs_mass > 0.0 ? 3.0 * std::sqrt(var) / abs_mass : 0.0;
  rep.cone_neg_mass_fraction = cone_abs > 0.0 ? cone_neg / cone_abs : 0.0;
  return rep;
}

std::vector<Rank1Tuple> rank1_default_grid() {
  const std::vector<std::pair<double, double>> ab{{1.5, 0.0}, {1.5, 0.5}, {1.5, 1.0}, {2.0, 0.0}, {2.0, 0.5},
                                                  {2.0, 1.0}, {3.0, 0.0}, {3.0, 0.5}, {3.0, 1.0}, {3.0, 2.0}};
  const std::vector<double> angles{kPi / 6, kPi / 4, kPi / 3};
  const std::vector<double> ts{0.2, 0.5, 0.8};
  std::vector<Rank1Tuple> candidates;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    for (std::size_t j = 0; j < angles.size() * angles.size() * ts.size(); ++j) {
      // rotate through the angle/t combinations so each (alpha, beta) sees different ones
      const std::size_t k = (j + 7 * i) % (angles.size() * angles.size() * ts.size());
      const double th = angles[k % 3];
      const double th2 = angles[(k / 3) % 3];
      const double t = ts[k / 9];
      const PsiSupport sup(std::sin(th) * std::sin(th2), std::cos(th) * std::cos(th2), t);
      if (!sup.empty && rank1_branch_continuous(ab[i].second, th, th2, t)) {
        candidates.push_back({ab[i].first, ab[i].second, th, th2, t});
        break;
      }
    }
    for (std::size_t j = 0; j < angles.size() * angles.size() * ts.size(); ++j) {
      const std::size_t k = (j + 7 * i + 13) % (angles.size() * angles.size() * ts.size());
      const double th = angles[k % 3];
      const double th2 = angles[(k / 3) % 3];
      const double t = ts[k / 9];
      const PsiSupport sup(std::sin(th) * std::sin(th2), std::cos(th) * std::cos(th2), t);
      const bool dup = std::any_of(candidates.begin(), candidates.end(), [&](const Rank1Tuple& c) {
        return c.alpha == ab[i].first && c.beta == ab[i].second && c.theta == th && c.theta2 == th2 && c.t == t;
      });
      if (!dup && !sup.empty && rank1_branch_continuous(ab[i].second, th, th2, t)) {
        candidates.push_back({ab[i].first, ab[i].second, th, th2, t});
        break;
      }
    }
  }
  return candidates;
}

namespace {

std::vector<DominantWeight> first_weights(const PolyTable& table, int max_size) {
  std::vector<DominantWeight> out;
  for (const auto& lam : table.weights()) {
    if (lam[0] <= max_size) {
      out.push_back(lam);
    }
  }
  return out;
}

DominantWeight unit_weight(int q, int first) {
  DominantWeight::Parts parts(static_cast<std::size_t>(q), 0);
  parts[0] = first;
  return DominantWeight(std::span<const int>(parts.data(), parts.size()));
}

std::vector<double> default_angles(int q, bool second) {
  static const std::vector<double> a{1.2, 0.9, 0.5, 0.3};
  static const std::vector<double> b{1.1, 0.7, 0.4, 0.2};
  if (q == 1) {
    return {second ? 0.8 : 1.0};
  }
  const auto& src = second ? b : a;
  return std::vector<double>(src.begin(), src.begin() + q);
}

class TableCache {
 public:
  TableCache(double p, int q, int max_deg, int quad_order) : p_(p), q_(q), max_deg_(max_deg), quad_(quad_order) {}

  const PolyTable& get(double l) {
    const double key = std::abs(l);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      it = tables_.emplace(key, hopoly::build_basis(Multiplicity::from_params(p_, q_, key), max_deg_, quad_)).first;
    }
    return it->second;
  }

 private:
  double p_;
  int q_;
  int max_deg_;
  int quad_;
  std::map<double, PolyTable> tables_;
};

void append(std::vector<CheckReport>& dst, std::vector<CheckReport> src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

}  // namespace

std::vector<CheckReport> run_suite(const std::string& suite, const SuiteOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw InvalidParam("unknown suite '" + suite + "'");
  }
  const int q = opt.q;
  const double p = opt.p;
  if (!(p > 2.0 * q - 1.0)) {
    throw InvalidParam("p must exceed 2q - 1");
  }
  const bool all = suite == "all";
  TableCache cache(p, q, opt.max_deg, opt.quad_order);
  std::vector<CheckReport> out;

  if (all || suite == "cone") {
    Philox rng(opt.conv.mc.seed, 0xC0DE);
    const int pairs = q == 1 ? 5 : 2;
    const std::vector<double> ls = q == 1 ? std::vector<double>{0, 1, 2} : std::vector<double>{0, 1};
    std::vector<std::pair<ConePoint, ConePoint>> points;
    for (int i = 0; i < pairs; ++i) {
      const ConePoint x = random_point(q, rng);
      points.emplace_back(x, random_point(q, rng));
    }
    for (double l : ls) {
      const PolyTable& tab = cache.get(l);
      const auto lams = first_weights(tab, q == 1 ? opt.max_deg : std::min(opt.max_deg, 2));
      for (const auto& [x, y] : points) {
        append(out, check_product_cone_many(tab, lams, l, x, y, opt.conv));
      }
    }
  }
  if (all || suite == "jacobi") {
    const std::vector<double> ls = q == 1 ? std::vector<double>{0.5, 1.0, 1.5} : std::vector<double>{0.5, 1.0};
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    if (q == 1) {
      pairs = {{{0.3}, {0.9}}, {{0.7}, {0.6}}, {{1.1}, {0.4}}};  // t + t2 <= pi/2
    } else {
      std::vector<double> a{0.6, 0.3, 0.2, 0.1};
      std::vector<double> b{0.5, 0.2, 0.15, 0.05};
      pairs = {{std::vector<double>(a.begin(), a.begin() + q), std::vector<double>(b.begin(), b.begin() + q)}};
    }
    for (double l : ls) {
      const PolyTable& tab = cache.get(l);
      std::vector<DominantWeight> lams{unit_weight(q, 2)};
      if (q == 1) {
        lams.push_back(unit_weight(q, 4));
      }
      for (const auto& [t, t2] : pairs) {
        auto reps = check_product_jacobi_many(tab, lams, l, t, t2, opt.conv);
        if (l == std::round(l)) {
          // Integer l: the same product through the cone formula at z = z' = 1.
          const auto cone = check_product_cone_many(tab, lams, l, ConePoint(t, 1.0), ConePoint(t2, 1.0), opt.conv);
          // The cone character carries the extra factor (Delta cos t)^l.
          const double scale = std::pow(product(t, [](double a) { return std::cos(a); }) *
                                            product(t2, [](double a) { return std::cos(a); }),
                                        l);
          for (std::size_t i = 0; i < lams.size(); ++i) {
            nlohmann::json params = reps[i].params;
            params["relation"] = "lhs of product_jacobi vs lhs of product_cone / (Delta cos t Delta cos t2)^l";
            out.push_back(make_report("jacobi_cone_consistency", params, reps[i].lhs, cone[i].lhs / scale, 1e-10,
                                      0, opt.conv.mc.seed));
          }
        }
        append(out, std::move(reps));
      }
    }
  }
  if (all || suite == "rank1") {
    for (const auto& g : rank1_default_grid()) {
      out.push_back(check_rank1_identity(g.alpha, g.beta, g.theta, g.theta2, g.t));
    }
  }
  if (all || suite == "disk") {
    if (!(p > 1.0)) {
      throw InvalidParam("disk suite needs p > 1");
    }
    Philox rng(opt.conv.mc.seed, 0xD15C);
    std::vector<std::pair<cplx, cplx>> pts;
    for (int i = 0; i < 3; ++i) {
      const cplx a = std::polar(std::sqrt(rng.uniform()), rng.uniform(-kPi, kPi));
      pts.emplace_back(a, std::polar(std::sqrt(rng.uniform()), rng.uniform(-kPi, kPi)));
    }
    pts.emplace_back(std::polar(1.0, 0.4), cplx(0.3, -0.5));
    for (int n = 0; n <= 3; ++n) {
      for (int l = -2; l <= 2; ++l) {
        for (const auto& [a, b] : pts) {
          out.push_back(check_disk_product(n, l, p, a, b));
        }
      }
    }
  }
  if (all || suite == "koornwinder") {
    const std::vector<std::pair<double, double>> ab{{3.0, 1.0}, {2.0, 0.5}, {1.5, 0.0}};
    const std::vector<std::pair<double, double>> angles{{0.5, 0.9}, {1.0, 1.2}};
    for (const auto& [alpha, beta] : ab) {
      for (const auto& [th, th2] : angles) {
        for (int n = 1; n <= 3; ++n) {
          append(out, check_koornwinder(n, alpha, beta, th, th2));
        }
      }
    }
  }
  if (all || suite == "kernel") {
    const double l = std::abs(opt.l);
    const auto t = default_angles(q, false);
    const auto t2 = default_angles(q, true);
    out.push_back(check_kernel_form(cache.get(l), unit_weight(q, 2), l, p, t, t2, opt.conv.mc));
  }
  if (all || suite == "ortho") {
    append(out, check_orthogonality(p, q, 2, 4, opt.haar));
  }
  if (all || suite == "axioms") {
    append(out, check_axioms(q, p, static_cast<int>(std::lround(opt.l)), opt.conv));
  }
  return out;
}

}  // namespace conehyperlab::verify
