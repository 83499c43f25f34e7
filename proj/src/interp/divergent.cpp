#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "divcalc/errors.hpp"
#include "divcalc/interp.hpp"

namespace divcalc::interp {
namespace {

using contour::QuadratureOptions;
using contour::QuadratureResult;

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ipow(cplx z, int k) {
  cplx r(1.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Distance to the nearest listed singularity, whatever the entirety flag says.
double listed_distance(const AnalyticFunction& f, cplx z) {
  double best = kInf;
  for (const auto& s : f.singularities()) best = std::min(best, std::abs(s.location - z));
  return best;
}

void validate(const DivergentIntegralSpec& spec) {
  if (spec.order < 1) throw std::invalid_argument("divergent integral: order must be >= 1");
  if (!std::isfinite(spec.x0)) throw std::invalid_argument("divergent integral: x0 must be finite");
  if (std::isnan(spec.a) || std::isnan(spec.b) || spec.a == kInf || spec.b == -kInf)
    throw std::invalid_argument("divergent integral: invalid limits");
  if (!(spec.a < spec.x0 && spec.x0 < spec.b))
    throw std::invalid_argument("divergent integral: x0 must lie strictly inside (a, b)");
}

void check_real_axis(const AnalyticFunction& f, double a, double b) {
  for (const auto& s : f.singularities()) {
    double scale = std::max(1.0, std::abs(s.location));
    if (std::abs(s.location.imag()) <= 1e-12 * scale && s.location.real() >= a && s.location.real() <= b)
      throw DomainError(ErrorKind::singularity_in_region, "f is singular on the interval of integration");
  }
}

bool in_sector(cplx s, cplx apex, double from, double to) {
  cplx w = s - apex;
  if (w == cplx(0.0)) return true;
  double phi = std::arg(w);
  return phi >= std::min(from, to) - 1e-12 && phi <= std::max(from, to) + 1e-12;
}

struct Geometry {
  double lo;  // finite part [lo, hi]
  double hi;
  double rho;
  bool left_inf;
  bool right_inf;
  std::optional<double> cutoff;
};

Geometry resolve_geometry(const DivergentIntegralSpec& spec, const EvaluationOptions& options) {
  Geometry g{spec.a, spec.b, 0.0, std::isinf(spec.a), std::isinf(spec.b), std::nullopt};
  double rho = options.rho ? *options.rho : default_rho(spec);
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("divergent integral: rho must be positive");
  if (g.left_inf || g.right_inf) {
    double c = 0.0;
    if (options.cutoff) {
      c = *options.cutoff;
      if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("divergent integral: cutoff must be positive");
    } else if (g.left_inf && g.right_inf) {
      c = std::max(2.0, std::abs(spec.x0) + 1.0 + 2.0 * rho);
    } else if (g.right_inf) {
      c = std::max(1.0, spec.x0 + 1.0 + 2.0 * rho);
    } else {
      c = std::max(1.0, -spec.x0 + 1.0 + 2.0 * rho);
    }
    if (g.left_inf) g.lo = -c;
    if (g.right_inf) g.hi = c;
    if (!(g.lo < spec.x0 && spec.x0 < g.hi))
      throw std::invalid_argument("divergent integral: cutoff must enclose x0");
    g.cutoff = c;
  }
  double room = std::min(spec.x0 - g.lo, g.hi - spec.x0);
  if (!options.rho) rho = std::min(rho, 0.5 * room);
  if (!(rho < room)) throw std::invalid_argument("divergent integral: rho too large for the interval");
  g.rho = rho;
  return g;
}

struct Accumulator {
  cplx value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  void add(const QuadratureResult& r, cplx weight = 1.0) {
    value += weight * r.value;
    error += std::abs(weight) * r.abs_error_estimate;
    evaluations += r.evaluations;
    converged = converged && r.converged;
  }

  void merge(const Accumulator& o, double sign) {
    value += sign * o.value;
    error += o.error;
    evaluations += o.evaluations;
    converged = converged && o.converged;
  }
};

Accumulator ray_integral(const std::function<cplx(cplx)>& g, double x_from, HalfPlane side, double angle,
                         double tol) {
  double heading = x_from >= 0.0 ? angle : std::numbers::pi - angle;
  if (side == HalfPlane::lower) heading = -heading;
  cplx dir = std::polar(1.0, heading);
  Accumulator acc;
  double s0 = 0.0;
  double len = std::max(1.0, 0.5 * std::abs(x_from));
  QuadratureOptions opts;
  opts.abs_tol = tol / 10.0;
  for (int chunk = 0; chunk < 64; ++chunk) {
    ContourPath piece({contour::PathSegment::line(x_from + s0 * dir, x_from + (s0 + len) * dir)});
    QuadratureResult r = contour::integrate_along(g, piece, opts);
    acc.add(r);
    if (chunk >= 1 && std::abs(r.value) + r.abs_error_estimate < tol / 10.0) return acc;
    s0 += len;
    len *= 2.0;
  }
  throw DomainError(ErrorKind::non_convergent, "tail along the tilted ray did not decay");
}

void check_decay(const std::function<cplx(double)>& fold, double c) {
  double first = 0.0;
  double last = 0.0;
  for (int k = 0; k <= 6; ++k) {
    double x = c * std::pow(10.0, k);
    cplx v = fold(x);
    double m = x * x * std::abs(v);
    if (!std::isfinite(m))
      throw DomainError(ErrorKind::non_convergent, "integrand is not finite far out on the real axis");
    if (k <= 1) first = std::max(first, m);
    last = m;
  }
  if (last > 10.0 * first + 1e-300)
    throw DomainError(ErrorKind::non_convergent,
                      "integrand does not decay fast enough at infinity (need f/x^2 integrable)");
}

Accumulator real_tail(const std::function<cplx(double)>& fold, double c, double tol) {
  check_decay(fold, c);
  QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.max_intervals = 8000;
  Accumulator acc;
  acc.add(contour::integrate_tail(fold, c, opts));
  if (!acc.converged)
    throw DomainError(ErrorKind::non_convergent,
                      "tail integral did not converge (oscillatory integrand without a decay hint?)");
  return acc;
}

// Contribution of everything outside [lo, hi] for the integrand g.
Accumulator tail_integral(const std::function<cplx(cplx)>& g, const DivergentIntegralSpec& spec, const Geometry& geo,
                          const EvaluationOptions& options, double tol) {
  Accumulator acc;
  if (!geo.left_inf && !geo.right_inf) return acc;
  double c = *geo.cutoff;
  if (spec.oscillation != Oscillation::none) {
    HalfPlane side = spec.oscillation == Oscillation::upper ? HalfPlane::upper : HalfPlane::lower;
    if (geo.right_inf) acc.merge(ray_integral(g, geo.hi, side, options.ray_angle, tol), 1.0);
    // The outward ray from lo runs towards -inf, opposite to the integration direction.
    if (geo.left_inf) acc.merge(ray_integral(g, geo.lo, side, options.ray_angle, tol), -1.0);
    return acc;
  }
  if (geo.left_inf && geo.right_inf) {
    acc = real_tail([&](double x) { return g(x) + g(-x); }, c, tol);
  } else if (geo.right_inf) {
    acc = real_tail([&](double x) { return g(x); }, c, tol);
  } else {
    acc = real_tail([&](double x) { return g(-x); }, c, tol);
  }
  return acc;
}

}  // namespace

double default_rho(const DivergentIntegralSpec& spec) {
  double d = listed_distance(spec.f, spec.x0);
  double rho = 0.5 * std::min(1.0, d);
  if (std::isfinite(spec.a)) rho = std::min(rho, 0.5 * (spec.x0 - spec.a));
  if (std::isfinite(spec.b)) rho = std::min(rho, 0.5 * (spec.b - spec.x0));
  return rho;
}

EvaluationResult evaluate_divergent(const DivergentIntegralSpec& spec, const Interpretation& interp, double tol,
                                    const EvaluationOptions& options) {
  validate(spec);
  if (!(tol > 0.0)) throw std::invalid_argument("divergent integral: tolerance must be positive");
  if (!(options.ray_angle > 0.0 && options.ray_angle < std::numbers::pi / 2))
    throw std::invalid_argument("divergent integral: ray angle must be in (0, pi/2)");

  const AnalyticFunction& f = spec.f;
  check_real_axis(f, spec.a, spec.b);
  Geometry geo = resolve_geometry(spec, options);
  if (listed_distance(f, spec.x0) <= geo.rho * (1.0 + 1e-12))
    throw DomainError(ErrorKind::singularity_in_region, "a singularity of f lies inside the indentation around x0");

  if (spec.oscillation != Oscillation::none) {
    double th = options.ray_angle;
    bool up = spec.oscillation == Oscillation::upper;
    for (const auto& s : f.singularities()) {
      bool hit = false;
      if (geo.right_inf) hit = hit || in_sector(s.location, geo.hi, 0.0, up ? th : -th);
      if (geo.left_inf)
        hit = hit || in_sector(s.location, geo.lo, up ? std::numbers::pi - th : -(std::numbers::pi - th),
                               up ? std::numbers::pi : -std::numbers::pi);
      if (hit)
        throw DomainError(ErrorKind::singularity_in_region, "a singularity of f lies between a tail and its tilted ray");
    }
  }

  const double x0 = spec.x0;
  const int order = spec.order;
  auto h = [&](cplx z) { return f(z) / ipow(z - x0, order); };

  const std::size_t genus = interp.genus();
  const double piece_tol = tol / static_cast<double>(2 * genus + 1);
  PathContext ctx{geo.lo, geo.hi, x0, geo.rho};

  EvaluationResult out;
  out.diagnostics.rho = geo.rho;
  out.diagnostics.cutoff = geo.cutoff;
  Accumulator total;
  for (std::size_t k = 0; k < genus; ++k) {
    const KernelPath& pair = interp.pairs()[k];
    ContourPath path = pair.path.build(ctx);
    if (path.empty() || std::abs(path.start() - geo.lo) > 1e-12 * std::max(1.0, std::abs(geo.lo)) ||
        std::abs(path.end() - geo.hi) > 1e-12 * std::max(1.0, std::abs(geo.hi)))
      throw std::invalid_argument("path template '" + pair.path.name + "' must run from a to b");
    if (!(contour::distance_to(path, x0) > 0.0))
      throw std::invalid_argument("path template '" + pair.path.name + "' passes through x0");
    for (const auto& s : f.singularities()) {
      if (contour::distance_to(path, s.location) <= 1e-9 * std::max(1.0, std::abs(s.location)))
        throw DomainError(ErrorKind::singularity_in_region,
                          "path template '" + pair.path.name + "' passes through a singularity of f");
    }
    if (k == 0) out.diagnostics.finite_path = path;

    QuadratureOptions opts;
    opts.abs_tol = piece_tol;
    Accumulator piece;
    piece.add(contour::integrate_along([&](cplx z) { return pair.kernel(z) * h(z); }, path, opts));
    out.diagnostics.path_contributions.push_back(piece.value);
    total.merge(piece, 1.0);
  }

  if (geo.left_inf || geo.right_inf) {
    Accumulator tails;
    bool constant = std::all_of(interp.pairs().begin(), interp.pairs().end(),
                                [](const KernelPath& p) { return p.kernel.constant.has_value(); });
    if (constant) {
      // One tail integral serves every pair.
      cplx w(0.0);
      for (const auto& p : interp.pairs()) w += *p.kernel.constant;
      Accumulator t = tail_integral(h, spec, geo, options, piece_tol);
      tails.value = w * t.value;
      tails.error = std::abs(w) * t.error;
      tails.evaluations = t.evaluations;
      tails.converged = t.converged;
    } else {
      for (const auto& p : interp.pairs())
        tails.merge(tail_integral([&](cplx z) { return p.kernel(z) * h(z); }, spec, geo, options, piece_tol), 1.0);
    }
    out.diagnostics.tail = tails.value;
    total.merge(tails, 1.0);
  }

  out.value = total.value;
  out.abs_error_estimate = total.error;
  out.diagnostics.evaluations = total.evaluations;
  out.diagnostics.converged = total.converged;
  return out;
}

}  // namespace divcalc::interp
