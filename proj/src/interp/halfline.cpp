#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "divcalc/interp.hpp"

namespace divcalc::interp {
namespace {

using contour::QuadratureOptions;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Keyhole around [0, a]: upper lip a -> delta (arg 0), circle |z| = delta
// counter-clockwise (arg 0 -> 2 pi), lower lip delta -> a (arg 2 pi). With
// either kernel the two lips combine to int_delta^a of the plain integrand,
// so only the circle needs the branch.
double keyhole_radius(const AnalyticFunction& f, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("half-line finite part: a must be positive");
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : f.singularities()) {
    double scale = std::max(1.0, std::abs(s.location));
    if (std::abs(s.location.imag()) <= 1e-12 * scale && s.location.real() >= 0.0 && s.location.real() <= a)
      throw DomainError(ErrorKind::singularity_in_region, "f is singular on [0, a]");
    d = std::min(d, std::abs(s.location));
  }
  return std::min(a, 0.5 * d);
}

cplx checked(const contour::QuadratureResult& r) {
  if (!r.converged) throw DomainError(ErrorKind::non_convergent, "half-line finite part: quadrature did not converge");
  return r.value;
}

}  // namespace

cplx fpi_halfline_integer(const AnalyticFunction& f, double a, int m, double tol) {
  if (m < 1) throw std::invalid_argument("half-line finite part: m must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("half-line finite part: tolerance must be positive");
  double delta = keyhole_radius(f, a);
  QuadratureOptions opts;
  opts.abs_tol = tol / 4.0;

  cplx lips(0.0);
  if (delta < a) {
    lips = checked(contour::integrate_interval([&](double x) { return f(cplx(x, 0.0)) / std::pow(x, m); }, delta, a,
                                               opts));
  }
  double log_delta = std::log(delta);
  auto on_circle = [&](double theta) {
    cplx z = std::polar(delta, theta);
    cplx kernel = cplx(log_delta, theta - std::numbers::pi);
    return f(z) * std::pow(z, -m) * kernel * cplx(0.0, 1.0) * z;
  };
  cplx circle = checked(contour::integrate_interval(on_circle, 0.0, kTwoPi, opts)) / cplx(0.0, kTwoPi);
  return lips + circle;
}

cplx fpi_halfline_fractional(const AnalyticFunction& f, double a, int m, double nu, double tol) {
  if (m < 1) throw std::invalid_argument("half-line finite part: m must be >= 1");
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("half-line finite part: nu must be in (0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("half-line finite part: tolerance must be positive");
  double delta = keyhole_radius(f, a);
  QuadratureOptions opts;
  opts.abs_tol = tol / 4.0;
  const double power = m + nu;

  cplx lips(0.0);
  if (delta < a) {
    lips = checked(contour::integrate_interval([&](double x) { return f(cplx(x, 0.0)) * std::pow(x, -power); }, delta,
                                               a, opts));
  }
  cplx kernel = 1.0 / (std::polar(1.0, -kTwoPi * nu) - 1.0);
  double scale = std::pow(delta, 1.0 - power);
  auto on_circle = [&](double theta) {
    // z^(-m-nu) dz with arg z = theta in [0, 2 pi).
    cplx z = std::polar(delta, theta);
    return f(z) * scale * std::polar(1.0, (1.0 - power) * theta) * cplx(0.0, 1.0);
  };
  cplx circle = kernel * checked(contour::integrate_interval(on_circle, 0.0, kTwoPi, opts));
  return lips + circle;
}

}  // namespace divcalc::interp
