#include <cmath>
#include <limits>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "divcalc/interp.hpp"

namespace divcalc::interp {
namespace {

using contour::QuadratureOptions;

cplx real_integral(const std::function<cplx(double)>& g, double lo, double hi) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-14;
  opts.max_intervals = 8000;
  return contour::integrate_interval(g, lo, hi, opts).value;
}

}  // namespace

OracleResult fpi_epsilon_oracle(const DivergentIntegralSpec& spec, const std::vector<double>& eps) {
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b))
    throw std::invalid_argument("epsilon oracle: limits must be finite");
  if (spec.order < 1) throw std::invalid_argument("epsilon oracle: order must be >= 1");
  if (!(spec.a < spec.x0 && spec.x0 < spec.b))
    throw std::invalid_argument("epsilon oracle: x0 must lie strictly inside (a, b)");
  if (eps.size() < 3) throw std::invalid_argument("epsilon oracle: need at least three eps values");
  double ratio = eps[0] / eps[1];
  for (std::size_t j = 0; j < eps.size(); ++j) {
    if (!(eps[j] > 0.0)) throw std::invalid_argument("epsilon oracle: eps values must be positive");
    if (j > 0 && std::abs(eps[j - 1] / eps[j] - ratio) > 1e-9 * ratio)
      throw std::invalid_argument("epsilon oracle: eps sequence must be geometric");
  }
  if (!(ratio > 1.0)) throw std::invalid_argument("epsilon oracle: eps sequence must decrease");
  if (!(eps[0] < std::min(spec.x0 - spec.a, spec.b - spec.x0)))
    throw std::invalid_argument("epsilon oracle: largest eps must be smaller than the distance to the endpoints");
  for (const auto& s : spec.f.singularities()) {
    double scale = std::max(1.0, std::abs(s.location));
    if (std::abs(s.location.imag()) <= 1e-12 * scale && s.location.real() >= spec.a && s.location.real() <= spec.b)
      throw DomainError(ErrorKind::singularity_in_region, "f is singular on the interval of integration");
  }

  const AnalyticFunction& f = spec.f;
  const double x0 = spec.x0;
  const int order = spec.order;
  const int n = order - 1;
  auto fr = [&](double x) { return f(cplx(x, 0.0)); };

  // Taylor coefficients f^(k)(x0)/k! for the subtraction term.
  std::vector<cplx> taylor(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    taylor[static_cast<std::size_t>(k)] = expr::derivative_at(f, x0, k).value / std::tgamma(k + 1.0);
  auto subtraction = [&](double e) {
    cplx h(0.0);
    for (int k = 0; k < n; ++k) {
      int p = n - k;
      if (p % 2 == 1) h += taylor[static_cast<std::size_t>(k)] * (2.0 / (p * std::pow(e, p)));
    }
    return h;
  };

  // I(eps) on the whole sequence: one outer integral plus annular increments.
  double sign = order % 2 == 0 ? 1.0 : -1.0;
  auto kernel = [&](double x) { return fr(x) / std::pow(x - x0, order); };
  auto pair = [&](double t) { return (fr(x0 + t) + sign * fr(x0 - t)) / std::pow(t, order); };
  cplx running = real_integral(kernel, spec.a, x0 - eps[0]) + real_integral(kernel, x0 + eps[0], spec.b);
  const std::size_t count = eps.size();
  std::vector<std::vector<cplx>> table(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0) running += real_integral(pair, eps[j], eps[j - 1]);
    table[j].push_back(running - subtraction(eps[j]));
  }

  // Richardson in eps^1, eps^3, eps^5, ...
  OracleResult best{table[0][0], std::numeric_limits<double>::infinity()};
  for (std::size_t j = 1; j < count; ++j) {
    for (std::size_t m = 1; m <= j; ++m) {
      double factor = std::pow(ratio, static_cast<double>(2 * m - 1));
      table[j].push_back((factor * table[j][m - 1] - table[j - 1][m - 1]) / (factor - 1.0));
    }
  }
  for (std::size_t j = 2; j < count; ++j) {
    for (std::size_t m = 1; m < j; ++m) {
      double err = std::abs(table[j][m] - table[j - 1][m]);
      if (err < best.abs_error_estimate) best = {table[j][m], err};
    }
  }
  if (!std::isfinite(best.abs_error_estimate) || !std::isfinite(std::abs(best.value)))
    throw DomainError(ErrorKind::non_convergent, "epsilon extrapolation did not converge");
  return best;
}

OracleResult fpi_epsilon_oracle(const DivergentIntegralSpec& spec) {
  double e0 = 0.5 * default_rho(spec);
  std::vector<double> eps;
  for (int j = 0; j <= 8; ++j) eps.push_back(e0 * std::ldexp(1.0, -j));
  return fpi_epsilon_oracle(spec, eps);
}

}  // namespace divcalc::interp
