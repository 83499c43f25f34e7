#pragma once

// Stieltjes and Hilbert transforms evaluated term by term over divergent
// integrals, with the interpretation-dependent correction terms, plus direct
// quadrature oracles, finite expansions and remainder diagnostics.

#include <complex>
#include <cstddef>
#include <vector>

#include "divcalc/expr.hpp"
#include "divcalc/interp.hpp"

namespace divcalc::transforms {

using cplx = std::complex<double>;
using expr::AnalyticFunction;
using interp::Builtin;
using interp::Interpretation;

enum class SeriesStatus { converged, max_terms_reached, term_growth, radius_exceeded };

std::string_view to_string(SeriesStatus s) noexcept;

struct SeriesEvaluation {
  cplx series_value{};
  cplx correction{};
  cplx total{};  // series_value + correction
  std::size_t terms_used = 0;
  double cutoff = 0.0;  // where the real-axis tails start
  double rho = 0.0;     // indentation radius shared by all terms
  std::vector<cplx> terms;  // signed, weighted terms in summation order
  std::vector<double> term_magnitudes;
  double abs_error_estimate = 0.0;
  bool converged = false;
  double radius_bound = 0.0;  // distance from 0 to the nearest singularity of f
  SeriesStatus status = SeriesStatus::max_terms_reached;
};

struct SeriesOptions {
  std::size_t max_terms = 30;
  double tol = 1e-10;
  std::optional<double> rho;
  std::optional<double> cutoff;
};

/// int_R f(x) / (omega^2 + x^2) dx by real-line quadrature.
cplx stieltjes_direct(const AnalyticFunction& f, double omega, double tol);

/// sum_j (-1)^j omega^{2j} #int_R f/x^{2j+2} + correction. Correction for
/// weights (w+, w-) on the upper/lower bumps: (pi/omega)[w+ f(i omega) + w- f(-i omega)].
/// omega at or beyond the nearest singularity gives status radius_exceeded
/// and NaN values.
SeriesEvaluation stieltjes_series(const AnalyticFunction& f, double omega, const Interpretation& interp,
                                  const SeriesOptions& options = {});
SeriesEvaluation stieltjes_series(const AnalyticFunction& f, double omega, Builtin interp,
                                  const SeriesOptions& options = {});

/// PV int_R f(x) / (omega - x) dx, folded about omega.
cplx hilbert_pv(const AnalyticFunction& f, double omega, double tol);

/// s sum_k omega^k #int_R f/x^{k+1} + correction with s = -1. Correction:
/// pi i f(omega) (w- - w+).
SeriesEvaluation hilbert_series(const AnalyticFunction& f, double omega, const Interpretation& interp,
                                const SeriesOptions& options = {});
SeriesEvaluation hilbert_series(const AnalyticFunction& f, double omega, Builtin interp,
                                const SeriesOptions& options = {});

/// Partial sums P_K = sum_{k<=K} omega^k (UBV_k - LBV_k), with
/// X_k = #int_R f/x^{k+1}, for K = 0 .. terms-1.
std::vector<cplx> taylor_difference_partial_sums(const AnalyticFunction& f, double omega, std::size_t terms,
                                                 double tol);

struct TermSpec {
  cplx coefficient;
  interp::DivergentIntegralSpec spec;
};

/// sum coefficient * #int term, with no correction term.
cplx finite_sum_reconstruction(const std::vector<TermSpec>& terms, const Interpretation& interp, double tol);

/// sin^2 x / x^2 = -1/4 e^{2ix}/x^2 + 1/2 1/x^2 - 1/4 e^{-2ix}/x^2 over the real line.
std::vector<TermSpec> sin2_over_x2_terms();

struct RemainderDiagnostics {
  cplx remainder{};       // R_n on the upper semicircle of radius a
  double bound = 0.0;     // (omega/a)^{2n} M(a)
  double m_a = 0.0;       // a int_0^pi |f(a e^{it})| / |omega^2 + a^2 e^{2it}| dt
  double m_literal = 0.0; // mean of the upper and lower arc integrals without the factor a
};

RemainderDiagnostics remainder_diagnostics(const AnalyticFunction& f, double omega, double a, int n,
                                           double tol = 1e-12);

}  // namespace divcalc::transforms
