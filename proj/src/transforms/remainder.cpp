#include <cmath>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "divcalc/transforms.hpp"

namespace divcalc::transforms {

RemainderDiagnostics remainder_diagnostics(const AnalyticFunction& f, double omega, double a, int n, double tol) {
  if (!(omega > 0.0) || !(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("remainder: need omega > 0 and a > 0");
  if (!(omega < a)) throw std::invalid_argument("remainder: omega must be smaller than a");
  if (n < 0) throw std::invalid_argument("remainder: n must be non-negative");
  if (!(tol > 0.0)) throw std::invalid_argument("remainder: tolerance must be positive");

  const auto path = contour::build_semicircle(a, contour::HalfPlane::upper);
  for (const auto& s : f.singularities()) {
    if (contour::distance_to(path, s.location) <= 1e-9 * std::max(1.0, std::abs(s.location)))
      throw DomainError(ErrorKind::singularity_in_region, "remainder: f is singular on the semicircle");
  }

  const double w2 = omega * omega;
  contour::QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = 1e-13;
  auto r = contour::integrate_along(
      [&](cplx z) { return f(z) / (std::pow(z, 2 * n) * (w2 + z * z)); }, path, opts);
  if (!r.converged) throw DomainError(ErrorKind::non_convergent, "remainder: quadrature did not converge");

  auto arc_modulus = [&](double t) {
    cplx z = std::polar(a, t);
    return cplx(std::abs(f(z)) / std::abs(w2 + z * z), 0.0);
  };
  auto upper = contour::integrate_interval(arc_modulus, 0.0, std::numbers::pi, opts);
  auto lower = contour::integrate_interval(arc_modulus, -std::numbers::pi, 0.0, opts);
  if (!upper.converged || !lower.converged)
    throw DomainError(ErrorKind::non_convergent, "remainder: bound quadrature did not converge");

  RemainderDiagnostics out;
  double scale = std::pow(omega, 2.0 * n);
  out.remainder = (n % 2 == 0 ? 1.0 : -1.0) * scale * r.value;
  out.m_a = a * upper.value.real();
  out.m_literal = 0.5 * (upper.value.real() + lower.value.real());
  out.bound = std::pow(omega / a, 2.0 * n) * out.m_a;
  return out;
}

}  // namespace divcalc::transforms
