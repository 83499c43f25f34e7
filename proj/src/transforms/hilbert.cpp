#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "series.hpp"

namespace divcalc::transforms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// #int_R f / x^{k+1} with the series geometry.
interp::EvaluationResult power_term(const AnalyticFunction& f, std::size_t k, const Interpretation& interp,
                                    const detail::SeriesSetup& setup, double tol) {
  interp::EvaluationOptions eval;
  eval.rho = setup.rho;
  eval.cutoff = setup.cutoff;
  interp::DivergentIntegralSpec spec{f, 0.0, static_cast<int>(k + 1), -kInf, kInf, interp::Oscillation::none};
  return interp::evaluate_divergent(spec, interp, tol, eval);
}

}  // namespace

cplx hilbert_pv(const AnalyticFunction& f, double omega, double tol) {
  if (!std::isfinite(omega)) throw std::invalid_argument("hilbert: omega must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("hilbert: tolerance must be positive");
  detail::check_real_axis(f);
  auto g = [&](double t) { return -(f(cplx(omega + t, 0.0)) - f(cplx(omega - t, 0.0))) / t; };
  double c = std::max(1.0, 2.0 * std::abs(omega));
  contour::QuadratureOptions opts;
  opts.abs_tol = tol / 2.0;
  opts.max_intervals = 8000;
  auto inner = contour::integrate_interval(g, 0.0, c, opts);
  if (!inner.converged) throw DomainError(ErrorKind::non_convergent, "hilbert: quadrature did not converge");
  auto tail = detail::real_tail(g, c, tol / 2.0);
  return inner.value + tail.value;
}

SeriesEvaluation hilbert_series(const AnalyticFunction& f, double omega, const Interpretation& interp,
                                const SeriesOptions& options) {
  if (!std::isfinite(omega)) throw std::invalid_argument("hilbert: omega must be finite");
  auto weights = detail::correction_weights(interp);
  auto setup = detail::series_setup(f, std::abs(omega), options);
  if (!setup) return detail::radius_exceeded(*expr::nearest_singularity_distance(f, 0.0));

  SeriesEvaluation out;
  out.radius_bound = setup->radius_bound;
  out.rho = setup->rho;
  out.cutoff = setup->cutoff;
  const cplx pi_i(0.0, std::numbers::pi);
  out.correction = pi_i * expr::evaluate(f, omega).value * (weights.lower - weights.upper);

  // 1/(omega - x) = -sum_k omega^k / x^{k+1} for |x| > |omega|.
  const double s = -1.0;
  detail::run_series(out, options, [&](std::size_t k) {
    if (omega == 0.0 && k > 0) return std::pair<cplx, double>{0.0, 0.0};
    double scale = std::pow(std::abs(omega), static_cast<double>(k));
    double tol_k = std::min(options.tol / std::max(scale, 1e-300), 1e200);
    auto r = power_term(f, k, interp, *setup, tol_k);
    double wk = std::pow(omega, static_cast<double>(k));
    return std::pair<cplx, double>{s * wk * r.value, scale * r.abs_error_estimate};
  });
  return out;
}

SeriesEvaluation hilbert_series(const AnalyticFunction& f, double omega, Builtin interp,
                                const SeriesOptions& options) {
  return hilbert_series(f, omega, interp::builtin(interp), options);
}

std::vector<cplx> taylor_difference_partial_sums(const AnalyticFunction& f, double omega, std::size_t terms,
                                                 double tol) {
  if (!std::isfinite(omega)) throw std::invalid_argument("taylor difference: omega must be finite");
  SeriesOptions options;
  options.tol = tol;
  auto setup = detail::series_setup(f, std::abs(omega), options);
  if (!setup) throw DomainError(ErrorKind::radius_exceeded, "taylor difference: |omega| is outside the radius of convergence");
  const Interpretation& ubv = interp::builtin(Builtin::ubv);
  const Interpretation& lbv = interp::builtin(Builtin::lbv);
  std::vector<cplx> sums;
  cplx running(0.0);
  for (std::size_t k = 0; k < terms; ++k) {
    double scale = std::pow(std::abs(omega), static_cast<double>(k));
    double tol_k = std::min(tol / std::max(scale, 1e-300), 1e200);
    cplx diff = power_term(f, k, ubv, *setup, tol_k).value - power_term(f, k, lbv, *setup, tol_k).value;
    running += std::pow(omega, static_cast<double>(k)) * diff;
    sums.push_back(running);
  }
  return sums;
}

}  // namespace divcalc::transforms
