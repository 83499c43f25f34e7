#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "series.hpp"

namespace divcalc::transforms {

cplx stieltjes_direct(const AnalyticFunction& f, double omega, double tol) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("stieltjes: omega must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("stieltjes: tolerance must be positive");
  detail::check_real_axis(f);
  const double w2 = omega * omega;
  auto g = [&](double x) { return f(cplx(x, 0.0)) / (w2 + x * x); };
  double c = std::max(1.0, 2.0 * omega);
  contour::QuadratureOptions opts;
  opts.abs_tol = tol / 2.0;
  opts.max_intervals = 8000;
  auto inner = contour::integrate_interval(g, -c, c, opts);
  if (!inner.converged) throw DomainError(ErrorKind::non_convergent, "stieltjes: quadrature did not converge");
  auto tail = detail::real_tail([&](double x) { return g(x) + g(-x); }, c, tol / 2.0);
  return inner.value + tail.value;
}

SeriesEvaluation stieltjes_series(const AnalyticFunction& f, double omega, const Interpretation& interp,
                                  const SeriesOptions& options) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("stieltjes: omega must be positive");
  auto weights = detail::correction_weights(interp);
  auto setup = detail::series_setup(f, omega, options);
  if (!setup) return detail::radius_exceeded(*expr::nearest_singularity_distance(f, 0.0));

  SeriesEvaluation out;
  out.radius_bound = setup->radius_bound;
  out.rho = setup->rho;
  out.cutoff = setup->cutoff;
  const double k = std::numbers::pi / omega;
  out.correction = k * (weights.upper * expr::evaluate(f, cplx(0.0, omega)).value +
                        weights.lower * expr::evaluate(f, cplx(0.0, -omega)).value);

  interp::EvaluationOptions eval;
  eval.rho = setup->rho;
  eval.cutoff = setup->cutoff;
  const double w2 = omega * omega;
  detail::run_series(out, options, [&](std::size_t j) {
    double scale = std::pow(w2, static_cast<double>(j));
    double tol_j = std::min(options.tol / scale, 1e200);
    interp::DivergentIntegralSpec spec{f, 0.0, static_cast<int>(2 * j + 2),
                                       -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(), interp::Oscillation::none};
    auto r = interp::evaluate_divergent(spec, interp, tol_j, eval);
    double sign = j % 2 == 0 ? 1.0 : -1.0;
    return std::pair<cplx, double>{sign * scale * r.value, scale * r.abs_error_estimate};
  });
  return out;
}

SeriesEvaluation stieltjes_series(const AnalyticFunction& f, double omega, Builtin interp,
                                  const SeriesOptions& options) {
  return stieltjes_series(f, omega, interp::builtin(interp), options);
}

}  // namespace divcalc::transforms
