#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "divcalc/transforms.hpp"

namespace divcalc::transforms::detail {

struct SeriesSetup {
  double radius_bound;
  double rho;
  double cutoff;
};

/// Indentation radius in (|omega|, R) and a shared cutoff 2 rho; nullopt when
/// |omega| >= R. Throws DomainError(unknown_singularities) when R cannot be
/// certified.
std::optional<SeriesSetup> series_setup(const AnalyticFunction& f, double omega_abs, const SeriesOptions& options);

SeriesEvaluation radius_exceeded(double radius_bound);

/// Weights on the upper/lower indentations; they must sum to 1.
Interpretation::SideWeights correction_weights(const Interpretation& interp);

/// Term j -> (signed weighted term, its absolute error estimate).
using TermFn = std::function<std::pair<cplx, double>(std::size_t)>;

/// Sums terms until three consecutive |term| < tol clamp(|running total|, 1e-6, 1)
/// with j >= 3, max_terms, or runaway growth. `out.correction` must be set.
void run_series(SeriesEvaluation& out, const SeriesOptions& options, const TermFn& term);

/// Throws DomainError(singularity_in_region) if f has a listed singularity on the real axis.
void check_real_axis(const AnalyticFunction& f);

/// int over [c, inf) of g through the mapped tail, after a decay check.
contour::QuadratureResult real_tail(const std::function<cplx(double)>& g, double c, double tol);

}  // namespace divcalc::transforms::detail
