#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "divcalc/errors.hpp"

namespace divcalc::transforms {

std::string_view to_string(SeriesStatus s) noexcept {
  switch (s) {
    case SeriesStatus::converged: return "converged";
    case SeriesStatus::max_terms_reached: return "max_terms_reached";
    case SeriesStatus::term_growth: return "term_growth";
    case SeriesStatus::radius_exceeded: return "radius_exceeded";
  }
  return "unknown";
}

namespace detail {

std::optional<SeriesSetup> series_setup(const AnalyticFunction& f, double omega_abs, const SeriesOptions& options) {
  if (options.max_terms == 0) throw std::invalid_argument("series: max_terms must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("series: tolerance must be positive");
  auto d = expr::nearest_singularity_distance(f, 0.0);
  if (!d)
    throw DomainError(ErrorKind::unknown_singularities,
                      "series: the singularity set of f is unknown, so the radius of convergence cannot be certified");
  double radius = *d;
  if (!(omega_abs < radius)) return std::nullopt;
  check_real_axis(f);
  SeriesSetup s{radius, 0.0, 0.0};
  s.rho = std::isinf(radius) ? std::max(1.0, 2.0 * omega_abs) : 0.5 * (omega_abs + radius);
  if (options.rho) {
    if (!(*options.rho > omega_abs && *options.rho < radius))
      throw std::invalid_argument("series: rho must lie between |omega| and the nearest singularity");
    s.rho = *options.rho;
  }
  s.cutoff = options.cutoff ? *options.cutoff : 2.0 * s.rho;
  if (!(s.cutoff > s.rho)) throw std::invalid_argument("series: cutoff must exceed rho");
  return s;
}

SeriesEvaluation radius_exceeded(double radius_bound) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SeriesEvaluation out;
  out.series_value = {nan, nan};
  out.correction = {nan, nan};
  out.total = {nan, nan};
  out.cutoff = nan;
  out.rho = nan;
  out.abs_error_estimate = nan;
  out.converged = false;
  out.radius_bound = radius_bound;
  out.status = SeriesStatus::radius_exceeded;
  return out;
}

Interpretation::SideWeights correction_weights(const Interpretation& interp) {
  auto w = interp.side_weights();
  if (!w)
    throw std::invalid_argument("interpretation '" + interp.name() +
                                "' has no series correction (needs constant kernels on indented paths)");
  if (std::abs(w->upper + w->lower - 1.0) > 1e-12)
    throw std::invalid_argument("interpretation '" + interp.name() + "': kernel weights must sum to 1");
  return *w;
}

void run_series(SeriesEvaluation& out, const SeriesOptions& options, const TermFn& term) {
  cplx running = out.correction;
  int small = 0;
  double first = 0.0;
  out.status = SeriesStatus::max_terms_reached;
  for (std::size_t j = 0; j < options.max_terms; ++j) {
    auto [t, err] = term(j);
    double mag = std::abs(t);
    out.terms.push_back(t);
    out.term_magnitudes.push_back(mag);
    out.series_value += t;
    out.abs_error_estimate += err;
    running += t;
    out.terms_used = j + 1;
    if (j < 3) first = std::max(first, mag);
    if (j >= 3 && mag > 1e8 * std::max(first, options.tol)) {
      out.status = SeriesStatus::term_growth;
      break;
    }
    double threshold = options.tol * std::clamp(std::abs(running), 1e-6, 1.0);
    small = mag < threshold ? small + 1 : 0;
    if (small >= 3 && j >= 3) {
      out.status = SeriesStatus::converged;
      break;
    }
  }
  out.converged = out.status == SeriesStatus::converged;
  out.total = out.series_value + out.correction;
}

void check_real_axis(const AnalyticFunction& f) {
  for (const auto& s : f.singularities()) {
    if (std::abs(s.location.imag()) <= 1e-12 * std::max(1.0, std::abs(s.location)))
      throw DomainError(ErrorKind::singularity_in_region, "f is singular on the real axis");
  }
}

contour::QuadratureResult real_tail(const std::function<cplx(double)>& g, double c, double tol) {
  double first = 0.0;
  double last = 0.0;
  for (int k = 0; k <= 6; ++k) {
    double x = c * std::pow(10.0, k);
    double m = x * x * std::abs(g(x));
    if (!std::isfinite(m)) throw DomainError(ErrorKind::non_convergent, "integrand is not finite far out");
    if (k <= 1) first = std::max(first, m);
    last = m;
  }
  if (last > 10.0 * first + 1e-300)
    throw DomainError(ErrorKind::non_convergent, "integrand tail does not decay");
  contour::QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.max_intervals = 8000;
  auto r = contour::integrate_tail(g, c, opts);
  if (!r.converged) throw DomainError(ErrorKind::non_convergent, "tail integral did not converge");
  return r;
}

}  // namespace detail
}  // namespace divcalc::transforms
