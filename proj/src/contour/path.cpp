#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "divcalc/contour.hpp"

namespace divcalc::contour {

PathSegment PathSegment::line(cplx start, cplx end) {
  if (start == end) throw std::invalid_argument("line segment: start and end coincide");
  if (!std::isfinite(std::abs(start)) || !std::isfinite(std::abs(end)))
    throw std::invalid_argument("line segment: endpoints must be finite");
  return PathSegment(LineSegment{start, end});
}

PathSegment PathSegment::arc(cplx center, double radius, double theta_start, double theta_end) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("arc: radius must be positive");
  double sweep = std::abs(theta_end - theta_start);
  if (!(sweep > 0.0) || sweep > 2.0 * std::numbers::pi * (1.0 + 1e-15))
    throw std::invalid_argument("arc: angular sweep must be in (0, 2 pi]");
  return PathSegment(ArcSegment{center, radius, theta_start, theta_end});
}

cplx PathSegment::point(double s) const noexcept {
  if (const auto* l = std::get_if<LineSegment>(&shape_)) {
    if (s == 1.0) return l->end;
    return l->start + s * (l->end - l->start);
  }
  const auto& a = std::get<ArcSegment>(shape_);
  double t = a.theta_start + s * (a.theta_end - a.theta_start);
  return a.center + std::polar(a.radius, t);
}

cplx PathSegment::tangent(double s) const noexcept {
  if (const auto* l = std::get_if<LineSegment>(&shape_)) return l->end - l->start;
  const auto& a = std::get<ArcSegment>(shape_);
  double dt = a.theta_end - a.theta_start;
  double t = a.theta_start + s * dt;
  return cplx(0.0, dt) * std::polar(a.radius, t);
}

double PathSegment::length() const noexcept {
  if (const auto* l = std::get_if<LineSegment>(&shape_)) return std::abs(l->end - l->start);
  const auto& a = std::get<ArcSegment>(shape_);
  return a.radius * std::abs(a.theta_end - a.theta_start);
}

PathSegment PathSegment::reversed() const noexcept {
  if (const auto* l = std::get_if<LineSegment>(&shape_)) return PathSegment(LineSegment{l->end, l->start});
  const auto& a = std::get<ArcSegment>(shape_);
  return PathSegment(ArcSegment{a.center, a.radius, a.theta_end, a.theta_start});
}

namespace {

void check_joint(const PathSegment& prev, const PathSegment& next) {
  cplx p = prev.end();
  cplx q = next.start();
  if (std::abs(p - q) > 1e-12 * std::max(1.0, std::abs(p)))
    throw std::invalid_argument("contour path: consecutive segments are not continuous");
}

}  // namespace

ContourPath::ContourPath(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
  for (std::size_t k = 1; k < segments_.size(); ++k) check_joint(segments_[k - 1], segments_[k]);
}

double ContourPath::length() const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length();
  return total;
}

ContourPath ContourPath::reversed() const {
  std::vector<PathSegment> out;
  out.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) out.push_back(it->reversed());
  return ContourPath(std::move(out));
}

ContourPath ContourPath::then(const ContourPath& next) const {
  std::vector<PathSegment> out = segments_;
  out.insert(out.end(), next.segments_.begin(), next.segments_.end());
  return ContourPath(std::move(out));
}

double distance_to(const PathSegment& segment, cplx z) {
  if (segment.is_line()) {
    const auto& l = segment.as_line();
    cplx d = l.end - l.start;
    double t = std::real((z - l.start) * std::conj(d)) / std::norm(d);
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (l.start + t * d));
  }
  const auto& a = segment.as_arc();
  double lo = std::min(a.theta_start, a.theta_end);
  double hi = std::max(a.theta_start, a.theta_end);
  cplx w = z - a.center;
  double best = std::min(std::abs(z - segment.start()), std::abs(z - segment.end()));
  if (w != cplx(0.0)) {
    double phi = std::arg(w);
    // Bring phi into [lo, lo + 2 pi).
    phi = lo + std::fmod(std::fmod(phi - lo, 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    if (phi <= hi) best = std::min(best, std::abs(std::abs(w) - a.radius));
  } else {
    best = a.radius;
  }
  return best;
}

double distance_to(const ContourPath& path, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : path.segments()) best = std::min(best, distance_to(s, z));
  return best;
}

ContourPath build_indented_path(double a, double b, double x0, double rho, HalfPlane side) {
  if (!(a < x0 && x0 < b)) throw std::invalid_argument("indented path: x0 must lie strictly inside (a, b)");
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("indented path: a and b must be finite");
  if (!(rho > 0.0)) throw std::invalid_argument("indented path: rho must be positive");
  if (!(rho < std::min(x0 - a, b - x0))) throw std::invalid_argument("indented path: rho too large");
  double theta0 = side == HalfPlane::upper ? std::numbers::pi : -std::numbers::pi;
  return ContourPath({
      PathSegment::line(a, x0 - rho),
      PathSegment::arc(x0, rho, theta0, 0.0),
      PathSegment::line(x0 + rho, b),
  });
}

ContourPath build_semicircle(double radius, HalfPlane half) {
  if (!(radius > 0.0)) throw std::invalid_argument("semicircle: radius must be positive");
  double theta0 = half == HalfPlane::upper ? std::numbers::pi : -std::numbers::pi;
  return ContourPath({PathSegment::arc(0.0, radius, theta0, 0.0)});
}

ContourPath build_circle(cplx center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
  return ContourPath({
      PathSegment::arc(center, radius, 0.0, std::numbers::pi),
      PathSegment::arc(center, radius, std::numbers::pi, 2.0 * std::numbers::pi),
  });
}

ContourPath tilted_ray_path(double x_from, HalfPlane direction, double length, double angle) {
  if (!(angle > 0.0 && angle < std::numbers::pi / 2))
    throw std::invalid_argument("tilted ray: angle must be in (0, pi/2)");
  if (!(length > 0.0)) throw std::invalid_argument("tilted ray: length must be positive");
  double heading = x_from >= 0.0 ? angle : std::numbers::pi - angle;
  if (direction == HalfPlane::lower) heading = -heading;
  return ContourPath({PathSegment::line(x_from, x_from + std::polar(length, heading))});
}

}  // namespace divcalc::contour
