#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "divcalc/contour.hpp"
#include "divcalc/errors.hpp"

namespace divcalc::contour {
namespace {

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]; nodes
// listed from the right end towards 0. Gauss nodes are xgk[1], xgk[3], ...
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600293871111, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Interval {
  std::size_t segment;
  double s0;
  double s1;
  cplx value;
  double error;
  double resabs;
};

struct ByError {
  bool operator()(const Interval& a, const Interval& b) const { return a.error < b.error; }
};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

Interval qk21(const Integrand& f, const PathSegment& seg, std::size_t index, double s0, double s1) {
  double center = 0.5 * (s0 + s1);
  double half = 0.5 * (s1 - s0);
  auto g = [&](double s) {
    cplx v = f(seg.point(s)) * seg.tangent(s);
    if (!finite(v)) {
      throw DomainError(ErrorKind::non_finite, "integrand is not finite on the integration path");
    }
    return v;
  };

  std::array<cplx, 21> fv;
  fv[10] = g(center);
  for (int j = 0; j < 10; ++j) {
    double dx = half * xgk[j];
    fv[j] = g(center - dx);
    fv[20 - j] = g(center + dx);
  }

  cplx kronrod = wgk[10] * fv[10];
  cplx gauss(0.0);
  double resabs = wgk[10] * std::abs(fv[10]);
  for (int j = 0; j < 10; ++j) {
    cplx pair = fv[j] + fv[20 - j];
    kronrod += wgk[j] * pair;
    resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
    if (j % 2 == 1) gauss += wg[j / 2] * pair;
  }
  cplx mean = 0.5 * kronrod;
  double resasc = wgk[10] * std::abs(fv[10] - mean);
  for (int j = 0; j < 10; ++j) resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));

  double ahalf = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  resabs *= ahalf;
  resasc *= ahalf;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {index, s0, s1, kronrod * half, err, resabs};
}

}  // namespace

QuadratureResult integrate_along(const Integrand& integrand, const ContourPath& path,
                                 const QuadratureOptions& options) {
  if (path.empty()) throw std::invalid_argument("integrate_along: empty path");
  if (!(options.abs_tol >= 0.0) || !(options.rel_tol >= 0.0) || (options.abs_tol == 0.0 && options.rel_tol == 0.0))
    throw std::invalid_argument("integrate_along: tolerance must be positive");

  const auto& segs = path.segments();
  std::priority_queue<Interval, std::vector<Interval>, ByError> active;
  std::vector<Interval> frozen;
  std::size_t evaluations = 0;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    active.push(qk21(integrand, segs[k], k, 0.0, 1.0));
    evaluations += 21;
  }

  auto totals = [&](cplx& value, double& error, double& resabs) {
    value = 0.0;
    error = 0.0;
    resabs = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      error += copy.top().error;
      resabs += copy.top().resabs;
      value += copy.top().value;
      copy.pop();
    }
    for (const auto& iv : frozen) {
      error += iv.error;
      resabs += iv.resabs;
      value += iv.value;
    }
  };

  cplx value;
  double error = 0.0;
  double resabs = 0.0;
  totals(value, error, resabs);
  std::size_t intervals = segs.size();
  auto tolerance = [&] {
    return std::max({options.abs_tol, options.rel_tol * std::abs(value), 100.0 * kEps * resabs});
  };

  while (error > tolerance() && !active.empty() && intervals < options.max_intervals) {
    Interval worst = active.top();
    active.pop();
    double mid = 0.5 * (worst.s0 + worst.s1);
    if (!(mid > worst.s0 && mid < worst.s1) || worst.s1 - worst.s0 < 1e-13) {
      frozen.push_back(worst);
      continue;
    }
    Interval left = qk21(integrand, segs[worst.segment], worst.segment, worst.s0, mid);
    Interval right = qk21(integrand, segs[worst.segment], worst.segment, mid, worst.s1);
    evaluations += 42;
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    active.push(left);
    active.push(right);
    if (intervals % 64 == 0) totals(value, error, resabs);
  }

  // Deterministic final sum in path order.
  std::vector<Interval> all = std::move(frozen);
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) {
    return a.segment != b.segment ? a.segment < b.segment : a.s0 < b.s0;
  });
  QuadratureResult out;
  out.value = 0.0;
  error = 0.0;
  resabs = 0.0;
  for (const auto& iv : all) {
    out.value += iv.value;
    error += iv.error;
    resabs += iv.resabs;
  }
  value = out.value;
  out.abs_error_estimate = error;
  out.evaluations = evaluations;
  out.converged = error <= tolerance();
  return out;
}

QuadratureResult integrate_along(const Integrand& integrand, const ContourPath& path, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_along: tolerance must be positive");
  QuadratureOptions options;
  options.abs_tol = tol;
  return integrate_along(integrand, path, options);
}

QuadratureResult integrate_interval(const std::function<cplx(double)>& g, double a, double b,
                                    const QuadratureOptions& options) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate_interval: need finite a < b");
  ContourPath path({PathSegment::line(a, b)});
  return integrate_along([&](cplx z) { return g(z.real()); }, path, options);
}

QuadratureResult integrate_tail(const std::function<cplx(double)>& g, double c,
                                const QuadratureOptions& options) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("integrate_tail: cutoff must be positive");
  ContourPath path({PathSegment::line(0.0, 1.0 / c)});
  return integrate_along(
      [&](cplx t) {
        double u = t.real();
        return g(1.0 / u) / (u * u);
      },
      path, options);
}

}  // namespace divcalc::contour
