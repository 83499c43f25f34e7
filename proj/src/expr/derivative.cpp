#include <cmath>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "divcalc/expr.hpp"

namespace divcalc::expr {
namespace {

constexpr std::size_t kMaxPoints = std::size_t{1} << 16;

}  // namespace

double default_derivative_radius(const AnalyticFunction& f, cplx x0) {
  auto d = nearest_singularity_distance(f, x0);
  if (!d) return 0.5;
  return std::min(1.0, *d / 2.0);
}

DerivativeResult derivative_at(const AnalyticFunction& f, cplx x0, int n, double radius) {
  if (n < 0) throw std::invalid_argument("derivative_at: order must be non-negative");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("derivative_at: radius must be positive and finite");
  if (auto d = nearest_singularity_distance(f, x0); d && *d <= radius) {
    throw DomainError(ErrorKind::singularity_in_region,
                      "derivative_at: a singularity of f lies inside the Cauchy circle");
  }

  // f^(n)(x0) = n! / (2 pi r^n) * int_0^{2pi} f(x0 + r e^{it}) e^{-int} dt.
  double scale = std::tgamma(n + 1.0) / std::pow(radius, n);
  std::size_t count = std::max<std::size_t>(32, 2 * static_cast<std::size_t>(n + 1));
  while (count & (count - 1)) ++count;  // power of two so samples nest

  std::vector<cplx> samples;
  double max_abs = 0.0;
  auto sample = [&](std::size_t k, std::size_t total) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(total);
    cplx v = f(x0 + std::polar(radius, t));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError(ErrorKind::non_finite, "derivative_at: non-finite sample on the Cauchy circle");
    max_abs = std::max(max_abs, std::abs(v));
    return v * std::polar(1.0, -static_cast<double>(n) * t);
  };

  cplx sum(0.0);
  for (std::size_t k = 0; k < count; ++k) sum += sample(k, count);
  std::size_t evaluations = count;
  cplx estimate = scale * sum / static_cast<double>(count);

  while (count < kMaxPoints) {
    std::size_t next = 2 * count;
    for (std::size_t k = 1; k < next; k += 2) sum += sample(k, next);
    evaluations += count;
    count = next;
    cplx refined = scale * sum / static_cast<double>(count);
    double diff = std::abs(refined - estimate);
    estimate = refined;
    if (diff <= 1e-13 * scale * max_abs + 1e-15 * std::abs(refined)) {
      return {estimate, diff + 4e-16 * scale * max_abs, evaluations};
    }
  }
  throw DomainError(ErrorKind::non_convergent, "derivative_at: trapezoidal rule did not converge");
}

DerivativeResult derivative_at(const AnalyticFunction& f, cplx x0, int n) {
  return derivative_at(f, x0, n, default_derivative_radius(f, x0));
}

}  // namespace divcalc::expr
