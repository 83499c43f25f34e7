#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "divcalc/contour.hpp"
#include "divcalc/expr.hpp"
#include "divcalc/interp.hpp"
#include "divcalc/transforms.hpp"
#include "generators.hpp"

using namespace divcalc;
using cplx = std::complex<double>;
using divcalc::testing::Gen;
using expr::parse_expression;
using interp::Builtin;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI(0.0, 1.0);

TEST_CASE("property: Schwarz reflection for real-coefficient expressions") {
  Gen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto text = g.expression(3);
    auto f = parse_expression(text);
    REQUIRE(f.has_real_coefficients());
    for (int k = 0; k < 100; ++k) {
      cplx z = g.in_disc(0.0, 0.9);
      cplx a = f(std::conj(z));
      cplx b = std::conj(f(z));
      CHECK_MESSAGE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)), text);
    }
  }
}

TEST_CASE("property: canonical form evaluates identically") {
  Gen g(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = parse_expression(g.expression(3));
    auto h = parse_expression(f.to_string());
    for (int k = 0; k < 100; ++k) {
      cplx z = g.in_disc(0.0, 0.9);
      CHECK(std::abs(f(z) - h(z)) <= 1e-12 * std::max(1.0, std::abs(f(z))));
    }
  }
}

TEST_CASE("property: rational singularities are the denominator roots") {
  Gen g(13);
  for (int trial = 0; trial < 30; ++trial) {
    int count = g.integer(1, 4);
    std::vector<cplx> roots;
    std::string den;
    for (int k = 0; k < count; ++k) {
      cplx r(g.uniform(-3, 3), g.uniform(0.2, 3) * (g.coin() ? 1 : -1));
      roots.push_back(r);
      char buf[128];
      std::snprintf(buf, sizeof buf, "(z - (%.17g + %.17gi))", r.real(), r.imag());
      den += (k ? "*" : "") + std::string(buf);
    }
    auto f = parse_expression("1/(" + den + ")");
    REQUIRE(f.entirety() == expr::Entirety::meromorphic);
    CHECK(f.singularities().size() == roots.size());
    for (cplx r : roots) {
      double best = kInf;
      for (const auto& s : f.singularities()) best = std::min(best, std::abs(s.location - r));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("property: zeroth derivative is evaluation") {
  Gen g(14);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = parse_expression(g.expression(2));
    cplx x0 = g.in_disc(0.0, 0.3);
    auto d = expr::derivative_at(f, x0, 0, 0.25);
    CHECK(std::abs(d.value - f(x0)) <= 1e-10 * std::max(1.0, std::abs(f(x0))));
  }
}

TEST_CASE("property: derivatives do not depend on the circle radius") {
  Gen g(15);
  std::vector<std::string> funcs = {"exp(2i*z)", "exp(-z^2)", "cos(z)", "1/(1+z^2)", "sin(z)*exp(z/3)"};
  for (int trial = 0; trial < 30; ++trial) {
    auto f = parse_expression(g.pick(funcs));
    double x0 = g.uniform(-0.5, 0.5);
    int n = g.integer(0, 5);
    double r = g.uniform(0.1, 0.2);
    auto a = expr::derivative_at(f, x0, n, r);
    auto b = expr::derivative_at(f, x0, n, 2 * r);
    CHECK(std::abs(a.value - b.value) <= 1e-8 * std::max(1.0, std::abs(a.value)));
  }
}

TEST_CASE("property: reversing a path negates the integral") {
  Gen g(16);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = g.polynomial(g.integer(0, 8));
    auto poly = [c](cplx z) {
      cplx v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
      return v;
    };
    double x0 = g.uniform(-0.5, 0.5);
    auto side = g.coin() ? contour::HalfPlane::upper : contour::HalfPlane::lower;
    auto p = contour::build_indented_path(-1, 1.5, x0, g.uniform(0.05, 0.4), side);
    auto fwd = contour::integrate_along(poly, p, 1e-12);
    auto back = contour::integrate_along(poly, p.reversed(), 1e-12);
    CHECK(std::abs(fwd.value + back.value) <= 2 * (fwd.abs_error_estimate + back.abs_error_estimate) + 1e-14);
  }
}

TEST_CASE("property: entire integrands are path independent") {
  Gen g(17);
  std::vector<std::string> funcs = {"exp(2i*z)", "exp(-z^2)", "cos(z)", "z^5 - 3*z"};
  for (int trial = 0; trial < 20; ++trial) {
    auto f = parse_expression(g.pick(funcs));
    double a = g.uniform(-2, -0.5);
    double b = g.uniform(0.5, 2);
    double x0 = g.uniform(a + 0.3, b - 0.3);
    double rho = g.uniform(0.05, 0.25);
    auto up = contour::integrate_along(f, contour::build_indented_path(a, b, x0, rho, contour::HalfPlane::upper), 1e-13);
    auto dn = contour::integrate_along(f, contour::build_indented_path(a, b, x0, rho, contour::HalfPlane::lower), 1e-13);
    CHECK(std::abs(up.value - dn.value) < 1e-10);
  }
}

TEST_CASE("property: homotopic indentations agree") {
  auto f = parse_expression("1/(1+z^2)");
  auto a = contour::integrate_along(f, contour::build_indented_path(-0.5, 0.5, 0, 0.1, contour::HalfPlane::upper), 1e-13);
  auto b = contour::integrate_along(f, contour::build_indented_path(-0.5, 0.5, 0, 0.3, contour::HalfPlane::upper), 1e-13);
  CHECK(std::abs(a.value - b.value) < 1e-10);
}

TEST_CASE("property: circle integral of 1/z") {
  for (double r : {0.5, 1.0, 3.0}) {
    auto v = contour::integrate_along([](cplx z) { return 1.0 / z; }, contour::build_circle(0.0, r), 1e-12);
    CHECK(std::abs(v.value - 2 * kPi * kI) < 1e-10);
  }
}

TEST_CASE("property: boundary-value identities at random poles") {
  Gen g(18);
  std::vector<std::string> funcs = {"exp(2i*z)", "exp(-z^2)", "cos(z)", "1/(4+z^2)", "sin(z)*exp(-z/2)"};
  for (int trial = 0; trial < 25; ++trial) {
    auto text = g.pick(funcs);
    auto f = parse_expression(text);
    double x0 = g.uniform(-0.8, 0.8);
    int n = g.integer(0, 4);
    interp::DivergentIntegralSpec s{f, x0, n + 1, x0 - g.uniform(0.5, 2), x0 + g.uniform(0.5, 2),
                                    interp::Oscillation::none};
    cplx u = interp::evaluate_divergent(s, interp::builtin(Builtin::ubv), 1e-12).value;
    cplx l = interp::evaluate_divergent(s, interp::builtin(Builtin::lbv), 1e-12).value;
    cplx fp = interp::evaluate_divergent(s, interp::builtin(Builtin::fpi), 1e-12).value;
    cplx d = expr::derivative_at(f, x0, n).value / std::tgamma(n + 1.0);
    CHECK_MESSAGE(std::abs(u - l - 2 * kPi * kI * d) < 1e-8, text);
    CHECK(std::abs(fp - 0.5 * (u + l)) < 1e-8);
    CHECK(std::abs(fp - fpi_epsilon_oracle(s).value) < 1e-6);
  }
}

TEST_CASE("property: convergent integrals keep their ordinary value") {
  boost::math::quadrature::tanh_sinh<double> ts;
  Gen g(19);
  for (int trial = 0; trial < 12; ++trial) {
    int n = g.integer(0, 4);
    double x0 = g.uniform(-0.5, 0.5);
    double a = x0 - g.uniform(0.5, 1.5);
    double b = x0 + g.uniform(0.5, 1.5);
    char text[96];
    std::snprintf(text, sizeof text, "(z - %.17g)^%d*exp(z)", x0, n + 2);
    interp::DivergentIntegralSpec s{parse_expression(text), x0, n + 1, a, b, interp::Oscillation::none};
    double ordinary = ts.integrate([x0](double x) { return (x - x0) * std::exp(x); }, a, b);
    for (Builtin bi : {Builtin::ubv, Builtin::lbv, Builtin::fpi})
      CHECK(std::abs(interp::evaluate_divergent(s, interp::builtin(bi), 1e-12).value - ordinary) < 1e-8);
  }
}

TEST_CASE("property: even functions give real finite parts and conjugate boundary values") {
  for (const char* text : {"exp(-z^2)", "cos(z)*exp(-z^2)", "1/(1+z^2)"}) {
    auto f = parse_expression(text);
    for (int j = 0; j < 4; ++j) {
      interp::DivergentIntegralSpec s{f, 0, 2 * j + 2, -kInf, kInf, interp::Oscillation::none};
      interp::EvaluationOptions o;
      o.rho = 0.5;
      cplx fp = interp::evaluate_divergent(s, interp::builtin(Builtin::fpi), 1e-11, o).value;
      cplx u = interp::evaluate_divergent(s, interp::builtin(Builtin::ubv), 1e-11, o).value;
      cplx l = interp::evaluate_divergent(s, interp::builtin(Builtin::lbv), 1e-11, o).value;
      CHECK(std::abs(fp.imag()) < 1e-8);
      CHECK(std::abs(u - std::conj(l)) < 1e-8);
    }
  }
}

TEST_CASE("property: FPI series and correction are the boundary-value means") {
  Gen g(20);
  for (int trial = 0; trial < 4; ++trial) {
    auto f = parse_expression(g.pick(std::vector<std::string>{"exp(-z^2)", "cos(z)*exp(-z^2)", "1/(4+z^2)"}));
    double w = g.uniform(0.2, 1.0);
    auto l = transforms::stieltjes_series(f, w, Builtin::lbv);
    auto u = transforms::stieltjes_series(f, w, Builtin::ubv);
    auto fp = transforms::stieltjes_series(f, w, Builtin::fpi);
    CHECK(std::abs(fp.series_value - 0.5 * (l.series_value + u.series_value)) < 1e-8);
    CHECK(std::abs(fp.correction - 0.5 * (l.correction + u.correction)) < 1e-8);
    CHECK(fp.total == fp.series_value + fp.correction);
    CHECK(fp.term_magnitudes.back() < 1e-10);
  }
}

TEST_CASE("property: Hilbert partial sums approach the principal value monotonically") {
  auto f = parse_expression("1/(1+z^2)");
  for (double w : {0.2, 0.4, 0.6}) {
    cplx pv = transforms::hilbert_pv(f, w, 1e-13);
    transforms::SeriesOptions o;
    o.tol = 1e-13;
    o.max_terms = 40;
    auto r = transforms::hilbert_series(f, w, Builtin::fpi, o);
    std::vector<double> errors;
    cplx running = 0.0;
    for (cplx t : r.terms) {
      running += t;
      errors.push_back(std::abs(running - pv));
    }
    // odd-indexed terms vanish, so compare every other partial sum
    for (std::size_t k = 3; k + 2 < errors.size(); k += 2) {
      if (errors[k] < 1e-11) break;
      CHECK(errors[k + 2] < errors[k]);
    }
  }
}

TEST_CASE("property: remainder stays under its bound") {
  Gen g(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = parse_expression(g.pick(std::vector<std::string>{"1", "exp(-z^2)", "cos(z)"}));
    double a = g.uniform(1.0, 3.0);
    double w = g.uniform(0.1, 0.9) * a;
    int n = g.integer(1, 10);
    auto r = transforms::remainder_diagnostics(f, w, a, n);
    CHECK(std::abs(r.remainder) <= r.bound * (1 + 1e-12));
  }
}
