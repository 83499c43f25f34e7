#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "divcalc/contour.hpp"
#include "divcalc/contour_json.hpp"
#include "divcalc/errors.hpp"

using namespace divcalc;
using namespace divcalc::contour;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

TEST_CASE("indented path above") {
  auto p = build_indented_path(-1, 1, 0, 0.25, HalfPlane::upper);
  REQUIRE(p.segments().size() == 3);
  const auto& arc = p.segments()[1].as_arc();
  CHECK(arc.theta_start == doctest::Approx(kPi));
  CHECK(arc.theta_end == doctest::Approx(0.0));
  CHECK(std::abs(p.start() - cplx(-1)) < 1e-15);
  CHECK(std::abs(p.end() - cplx(1)) < 1e-15);
  CHECK(p.segments()[1].point(0.5).imag() == doctest::Approx(0.25));
}

TEST_CASE("indented path below") {
  auto p = build_indented_path(-1, 1, 0, 0.25, HalfPlane::lower);
  const auto& arc = p.segments()[1].as_arc();
  CHECK(arc.theta_start == doctest::Approx(-kPi));
  CHECK(arc.theta_end == doctest::Approx(0.0));
  CHECK(p.segments()[1].point(0.5).imag() == doctest::Approx(-0.25));
}

TEST_CASE("indented path preconditions") {
  CHECK_THROWS_AS(build_indented_path(0, 1, 0.5, 0.6, HalfPlane::upper), std::invalid_argument);
  CHECK_THROWS_AS(build_indented_path(0, 1, 1.5, 0.1, HalfPlane::upper), std::invalid_argument);
  CHECK_THROWS_AS(build_indented_path(0, 1, 0.5, -0.1, HalfPlane::upper), std::invalid_argument);
}

TEST_CASE("semicircles") {
  auto up = build_semicircle(2, HalfPlane::upper);
  REQUIRE(up.segments().size() == 1);
  CHECK(up.segments()[0].as_arc().theta_start == doctest::Approx(kPi));
  CHECK(up.segments()[0].as_arc().theta_end == doctest::Approx(0.0));
  auto low = build_semicircle(2, HalfPlane::lower);
  CHECK(std::abs(low.start() - cplx(-2)) < 1e-14);
  CHECK(std::abs(low.end() - cplx(2)) < 1e-14);
  CHECK(low.segments()[0].point(0.5).imag() == doctest::Approx(-2.0));
  auto unit = build_semicircle(1, HalfPlane::upper);
  CHECK(std::abs(unit.start() - cplx(-1)) < 1e-15);
  CHECK(std::abs(unit.end() - cplx(1)) < 1e-15);
  CHECK_THROWS_AS(build_semicircle(0, HalfPlane::upper), std::invalid_argument);
}

TEST_CASE("segment invariants") {
  CHECK_THROWS_AS(PathSegment::line(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PathSegment::arc(0.0, 0.0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(PathSegment::arc(0.0, 1.0, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(ContourPath({PathSegment::line(0.0, 1.0), PathSegment::line(2.0, 3.0)}), std::invalid_argument);
}

TEST_CASE("integrate 1/z over the unit circle") {
  auto r = integrate_along([](cplx z) { return 1.0 / z; }, build_circle(0.0, 1.0), 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0 * kPi * kI) < 1e-12);
}

TEST_CASE("integrate z over a line") {
  auto r = integrate_along([](cplx z) { return z; }, ContourPath({PathSegment::line(0.0, 1.0)}), 1e-12);
  CHECK(std::abs(r.value - 0.5) < 1e-15);
  CHECK(r.evaluations >= 1);
  CHECK(r.abs_error_estimate >= 0.0);
}

TEST_CASE("integrate 1/z over the upper semicircle") {
  auto r = integrate_along([](cplx z) { return 1.0 / z; }, build_semicircle(1, HalfPlane::upper), 1e-12);
  CHECK(std::abs(r.value + kPi * kI) < 1e-12);
}

TEST_CASE("Kronrod rule is exact for low-degree polynomials on one interval") {
  auto r = integrate_interval([](double x) { return cplx(std::pow(x, 19)); }, 0.0, 1.0);
  CHECK(r.evaluations == 21);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 1.0 / 20.0) < 1e-15);
}

TEST_CASE("non-finite samples are reported") {
  try {
    integrate_interval([](double x) { return cplx(1.0 / (x - 0.5)); }, 0.0, 1.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::non_finite);
  }
}

TEST_CASE("interval limit returns best value unconverged") {
  QuadratureOptions opts;
  opts.abs_tol = 1e-15;
  opts.max_intervals = 3;
  auto r = integrate_interval([](double x) { return cplx(std::sqrt(x)); }, 0.0, 1.0, opts);
  CHECK_FALSE(r.converged);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-4);
}

TEST_CASE("tail integral") {
  auto r = integrate_tail([](double x) { return cplx(1.0 / (x * x)); }, 2.0);
  CHECK(std::abs(r.value - 0.5) < 1e-12);
  CHECK_THROWS_AS(integrate_tail([](double x) { return cplx(1.0 / (x * x)); }, 0.0), std::invalid_argument);
}

TEST_CASE("tilted rays") {
  auto right = tilted_ray_path(5, HalfPlane::upper, 10, kPi / 4);
  CHECK(std::abs(right.end() - (5.0 + 10.0 * std::exp(kI * kPi / 4.0))) < 1e-13);
  auto left = tilted_ray_path(-5, HalfPlane::upper, 10, kPi / 4);
  CHECK(std::abs(left.end() - (-5.0 + 10.0 * std::exp(kI * 3.0 * kPi / 4.0))) < 1e-13);
  auto down = tilted_ray_path(5, HalfPlane::lower, 1, kPi / 4);
  CHECK(down.end().imag() < 0.0);
  CHECK_THROWS_AS(tilted_ray_path(5, HalfPlane::upper, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tilted_ray_path(5, HalfPlane::upper, 10, kPi / 2), std::invalid_argument);
}

TEST_CASE("distances") {
  auto p = build_indented_path(-1, 1, 0, 0.25, HalfPlane::upper);
  CHECK(distance_to(p, 0.0) == doctest::Approx(0.25));
  CHECK(distance_to(p, cplx(0, -1)) == doctest::Approx(std::hypot(0.25, 1.0)));
}

TEST_CASE("path JSON lists the segments") {
  auto j = path_to_json(build_indented_path(-1, 1, 0, 0.25, HalfPlane::lower));
  REQUIRE(j["segments"].size() == 3);
  CHECK(j["segments"][0]["type"] == "line");
  CHECK(j["segments"][1]["type"] == "arc");
  CHECK(j["segments"][1]["radius"].get<double>() == 0.25);
}
