#pragma once

// Oriented piecewise paths in the complex plane and adaptive Gauss-Kronrod
// integration along them.

#include <complex>
#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

namespace divcalc::contour {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(cplx)>;

struct LineSegment {
  cplx start;
  cplx end;
};

/// center + radius * e^{i theta}, theta running from theta_start to theta_end
/// (either direction).
struct ArcSegment {
  cplx center;
  double radius;
  double theta_start;
  double theta_end;
};

class PathSegment {
 public:
  /// Throws std::invalid_argument when start == end.
  static PathSegment line(cplx start, cplx end);
  /// Throws std::invalid_argument unless radius > 0 and |theta_end - theta_start| is in (0, 2 pi].
  static PathSegment arc(cplx center, double radius, double theta_start, double theta_end);

  bool is_line() const noexcept { return std::holds_alternative<LineSegment>(shape_); }
  const LineSegment& as_line() const { return std::get<LineSegment>(shape_); }
  const ArcSegment& as_arc() const { return std::get<ArcSegment>(shape_); }

  /// Point at parameter s in [0, 1].
  cplx point(double s) const noexcept;
  /// dz/ds at parameter s.
  cplx tangent(double s) const noexcept;
  cplx start() const noexcept { return point(0.0); }
  cplx end() const noexcept { return point(1.0); }
  double length() const noexcept;
  PathSegment reversed() const noexcept;

 private:
  explicit PathSegment(std::variant<LineSegment, ArcSegment> shape) : shape_(shape) {}
  std::variant<LineSegment, ArcSegment> shape_;
};

class ContourPath {
 public:
  ContourPath() = default;
  /// Throws std::invalid_argument if consecutive segments are more than
  /// 1e-12 (relative) apart.
  explicit ContourPath(std::vector<PathSegment> segments);

  const std::vector<PathSegment>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }
  cplx start() const { return segments_.front().start(); }
  cplx end() const { return segments_.back().end(); }
  double length() const noexcept;

  /// Same geometry traversed backwards.
  ContourPath reversed() const;
  /// Concatenation; the continuity check applies at the joint.
  ContourPath then(const ContourPath& next) const;

 private:
  std::vector<PathSegment> segments_;
};

enum class HalfPlane { upper, lower };

/// a -> x0 - rho, semicircle of radius rho about x0 through `side`, x0 + rho -> b.
/// side = upper is gamma+, side = lower is gamma-.
ContourPath build_indented_path(double a, double b, double x0, double rho, HalfPlane side);

/// Arc of the given radius about 0 from -radius to +radius through `half`.
ContourPath build_semicircle(double radius, HalfPlane half);

/// Full counter-clockwise circle as two arcs starting at center + radius.
ContourPath build_circle(cplx center, double radius);

/// Shortest distance from z to the segment.
double distance_to(const PathSegment& segment, cplx z);
/// Shortest distance from z to any segment of the path.
double distance_to(const ContourPath& path, cplx z);

/// Line from x_from into `direction` at `angle` from the real axis, tilted
/// away from the origin (towards +inf for x_from >= 0, towards -inf otherwise).
ContourPath tilted_ray_path(double x_from, HalfPlane direction, double length, double angle);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_intervals = 4000;
};

struct QuadratureResult {
  cplx value{};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive G10/K21 quadrature over all segments at once. Stops when
/// the summed error estimate is below max(abs_tol, rel_tol |value|) or the
/// rounding floor of the rule, or when max_intervals is reached (converged =
/// false, best value returned). Throws DomainError(non_finite) on an inf/nan
/// sample.
QuadratureResult integrate_along(const Integrand& integrand, const ContourPath& path,
                                 const QuadratureOptions& options = {});
QuadratureResult integrate_along(const Integrand& integrand, const ContourPath& path, double tol);

/// int_a^b g(x) dx on the real line, a < b finite.
QuadratureResult integrate_interval(const std::function<cplx(double)>& g, double a, double b,
                                    const QuadratureOptions& options = {});

/// int_c^inf g(x) dx for c > 0 through x = 1/t. g must decay at least like
/// 1/x^2 for the mapped integrand to stay bounded.
QuadratureResult integrate_tail(const std::function<cplx(double)>& g, double c,
                                const QuadratureOptions& options = {});

}  // namespace divcalc::contour
