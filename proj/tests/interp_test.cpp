#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "divcalc/errors.hpp"
#include "divcalc/interp.hpp"

using namespace divcalc;
using namespace divcalc::interp;
using cplx = std::complex<double>;
using expr::parse_expression;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI(0.0, 1.0);

namespace {

DivergentIntegralSpec finite(const char* f, double x0, int order, double a, double b) {
  return {parse_expression(f), x0, order, a, b, Oscillation::none};
}

cplx eval(const DivergentIntegralSpec& s, Builtin b, double tol = 1e-12) {
  return evaluate_divergent(s, builtin(b), tol).value;
}

}  // namespace

TEST_CASE("evaluate_divergent: constant numerator examples") {
  CHECK(std::abs(eval(finite("1", 0, 1, -1, 1), Builtin::fpi)) < 1e-12);
  CHECK(std::abs(eval(finite("1", 0, 1, -1, 1), Builtin::ubv) - kPi * kI) < 1e-12);
  CHECK(std::abs(eval(finite("1", 0, 1, -1, 1), Builtin::lbv) + kPi * kI) < 1e-12);
  CHECK(std::abs(eval(finite("1", 0, 2, -1, 1), Builtin::fpi) + 2.0) < 1e-12);
}

TEST_CASE("evaluate_divergent: oscillatory line integral") {
  DivergentIntegralSpec s{parse_expression("exp(2i*z)"), 0, 2, -kInf, kInf, Oscillation::upper};
  auto r = evaluate_divergent(s, builtin(Builtin::ubv), 1e-11);
  CHECK(std::abs(r.value + 4.0 * kPi) < 1e-8);
  REQUIRE(r.diagnostics.cutoff.has_value());
}

TEST_CASE("evaluate_divergent: off-centre pole and asymmetric interval") {
  // PV int_0^3 dx/(x-1) = ln 2
  auto s = finite("1", 1, 1, 0, 3);
  CHECK(std::abs(eval(s, Builtin::fpi) - std::log(2.0)) < 1e-12);
  // FP int_0^3 dx/(x-1)^2 = -1/2 - 1
  CHECK(std::abs(eval(finite("1", 1, 2, 0, 3), Builtin::fpi) + 1.5) < 1e-12);
}

TEST_CASE("evaluate_divergent: decaying function over the real line") {
  // FP int exp(-x^2)/x^2 dx = -2 sqrt(pi)
  DivergentIntegralSpec s{parse_expression("exp(-z^2)"), 0, 2, -kInf, kInf, Oscillation::none};
  auto r = evaluate_divergent(s, builtin(Builtin::fpi), 1e-11);
  CHECK(std::abs(r.value + 2.0 * std::sqrt(kPi)) < 1e-9);
}

TEST_CASE("evaluate_divergent: half-infinite interval") {
  // The odd integrand cancels on [-1, 1], leaving int_1^inf dx / ((1+x^2) x) = ln(2)/2.
  boost::math::quadrature::tanh_sinh<double> ts;
  double oracle = ts.integrate([](double x) { return 1.0 / ((1.0 + x * x) * x); }, 1.0, kInf);
  DivergentIntegralSpec s{parse_expression("1/(1+z^2)"), 0, 1, -1, kInf, Oscillation::none};
  CHECK(std::abs(eval(s, Builtin::fpi, 1e-11) - oracle) < 1e-9);
  CHECK(std::abs(oracle - std::log(2.0) / 2.0) < 1e-12);
}

TEST_CASE("evaluate_divergent: errors") {
  auto pole = finite("1/(z-0.5)", 0, 1, -1, 1);
  try {
    eval(pole, Builtin::fpi);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::singularity_in_region);
  }
  DivergentIntegralSpec growing{parse_expression("exp(z^2)"), 0, 1, -kInf, kInf, Oscillation::none};
  try {
    eval(growing, Builtin::fpi);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::non_convergent);
  }
  CHECK_THROWS_AS(eval(finite("1", 0, 0, -1, 1), Builtin::fpi), std::invalid_argument);
  CHECK_THROWS_AS(eval(finite("1", 2, 1, -1, 1), Builtin::fpi), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_divergent(finite("1", 0, 1, -1, 1), builtin(Builtin::fpi), 0.0), std::invalid_argument);
}

TEST_CASE("evaluate_divergent: pole near the bump shrinks rho") {
  auto s = finite("1/((z-0.1)^2+0.01)", 0, 1, -1, 1);
  double rho = default_rho(s);
  CHECK(rho < 0.1);
  cplx u = eval(s, Builtin::ubv);
  cplx l = eval(s, Builtin::lbv);
  CHECK(std::abs(u - l - 2.0 * kPi * kI * s.f(0.0)) < 1e-9);
}

TEST_CASE("epsilon oracle examples") {
  CHECK(std::abs(fpi_epsilon_oracle(finite("1", 0, 1, -1, 1)).value) < 1e-12);
  CHECK(std::abs(fpi_epsilon_oracle(finite("1", 0, 2, -1, 1)).value + 2.0) < 1e-10);
  auto s = finite("exp(-z^2)", 0, 3, -1, 1);
  CHECK(std::abs(fpi_epsilon_oracle(s).value - eval(s, Builtin::fpi)) < 1e-6);
}

TEST_CASE("epsilon oracle preconditions") {
  CHECK_THROWS_AS(fpi_epsilon_oracle(finite("1", 0, 2, -1, 1), {0.5, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(fpi_epsilon_oracle(finite("1", 0, 2, -1, 1), {2.0, 1.0, 0.5}), std::invalid_argument);
  DivergentIntegralSpec inf{parse_expression("1"), 0, 2, -kInf, 1, Oscillation::none};
  CHECK_THROWS_AS(fpi_epsilon_oracle(inf), std::invalid_argument);
}

TEST_CASE("half-line finite part, integer powers") {
  auto one = parse_expression("1");
  CHECK(std::abs(fpi_halfline_integer(one, 2, 1, 1e-12) - std::log(2.0)) < 1e-8);
  CHECK(std::abs(fpi_halfline_integer(one, 1, 2, 1e-12) + 1.0) < 1e-8);
  boost::math::quadrature::tanh_sinh<double> ts;
  double ein = ts.integrate([](double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }, 0.0, 1.0);
  CHECK(std::abs(fpi_halfline_integer(parse_expression("exp(z)"), 1, 1, 1e-12) - ein) < 1e-8);
}

TEST_CASE("half-line finite part, fractional powers") {
  auto one = parse_expression("1");
  CHECK(std::abs(fpi_halfline_fractional(one, 1, 1, 0.5, 1e-12) + 2.0) < 1e-8);
  CHECK(std::abs(fpi_halfline_fractional(one, 4, 1, 0.5, 1e-12) + 1.0) < 1e-8);
  CHECK(std::abs(fpi_halfline_fractional(parse_expression("z"), 1, 1, 0.5, 1e-12) - 2.0) < 1e-8);
  boost::math::quadrature::tanh_sinh<double> ts;
  auto regular = [](double x) { return x > 0.0 ? std::expm1(x) / x / std::sqrt(x) : 0.0; };
  double oracle = -2.0 + ts.integrate(regular, 0.0, 1.0);
  CHECK(std::abs(fpi_halfline_fractional(parse_expression("exp(z)"), 1, 1, 0.5, 1e-12) - oracle) < 1e-8);
  CHECK_THROWS_AS(fpi_halfline_fractional(one, 1, 1, 1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(fpi_halfline_fractional(one, 1, 1, 0.0, 1e-12), std::invalid_argument);
}

TEST_CASE("half-line finite part rejects singularities in the keyhole") {
  try {
    fpi_halfline_integer(parse_expression("1/(z-0.5)"), 1, 1, 1e-10);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::singularity_in_region);
  }
}

TEST_CASE("Fourier closed forms") {
  CHECK(std::abs(fourier_closed_form(Builtin::fpi, 2, 0, 2) + 2.0 * kPi) < 1e-14);
  CHECK(std::abs(fourier_closed_form(Builtin::ubv, -2, 0, 2)) == 0.0);
  CHECK(std::abs(fourier_closed_form(Builtin::lbv, 0, 0, 1) + kPi * kI) < 1e-15);
  CHECK(std::abs(fourier_closed_form(Builtin::ubv, 0, 0, 1) - kPi * kI) < 1e-15);
  CHECK(std::abs(fourier_closed_form(Builtin::fpi, 0, 0, 1)) == 0.0);
  CHECK(std::abs(fourier_closed_form(Builtin::ubv, 0, 0, 3)) == 0.0);
  CHECK_THROWS_AS(fourier_closed_form(Builtin::fpi, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("interpretation registry") {
  auto fpi = register_interpretation(
      "FPI-std", {{Kernel::constant_value(0.5), PathTemplate::gamma_plus()},
                  {Kernel::constant_value(0.5), PathTemplate::gamma_minus()}});
  CHECK(fpi.genus() == 2);
  auto lbv = register_interpretation("LBV-std", {{Kernel::constant_value(1.0), PathTemplate::gamma_plus()}});
  CHECK(lbv.genus() == 1);
  CHECK_THROWS_AS(register_interpretation("empty", {}), std::invalid_argument);
  CHECK_THROWS_AS(register_interpretation("LBV-std", {{Kernel::constant_value(1.0), PathTemplate::gamma_plus()}}),
                  std::invalid_argument);
  CHECK(default_registry().find("FPI-std").has_value());
  CHECK(default_registry().find("UBV").has_value());
  CHECK_FALSE(default_registry().find("nope").has_value());

  auto s = finite("exp(-z^2)", 0.2, 2, -1, 1.5);
  CHECK(std::abs(evaluate_divergent(s, fpi, 1e-12).value - eval(s, Builtin::fpi)) < 1e-12);
  CHECK(std::abs(evaluate_divergent(s, lbv, 1e-12).value - eval(s, Builtin::lbv)) < 1e-12);
}

TEST_CASE("custom weights interpolate between boundary values") {
  Interpretation mix("mix", {{Kernel::constant_value(0.3), PathTemplate::gamma_plus()},
                             {Kernel::constant_value(0.7), PathTemplate::gamma_minus()}});
  auto w = mix.side_weights();
  REQUIRE(w.has_value());
  CHECK(std::abs(w->upper - 0.3) < 1e-15);
  auto s = finite("cos(z)", 0, 2, -1, 1);
  cplx expect = 0.3 * eval(s, Builtin::lbv) + 0.7 * eval(s, Builtin::ubv);
  CHECK(std::abs(evaluate_divergent(s, mix, 1e-12).value - expect) < 1e-10);
}

TEST_CASE("analytic kernels are accepted") {
  Interpretation k("zk", {{Kernel::analytic([](cplx z) { return z; }), PathTemplate::gamma_plus()}});
  CHECK_FALSE(k.side_weights().has_value());
  // z * 1/z^2 = 1/z on gamma+: PV - i pi
  auto s = finite("1", 0, 2, -1, 1);
  CHECK(std::abs(evaluate_divergent(s, k, 1e-12).value + kPi * kI) < 1e-10);
}

TEST_CASE("builtin names") {
  CHECK(parse_builtin("fpi") == Builtin::fpi);
  CHECK(parse_builtin("UbV") == Builtin::ubv);
  CHECK_THROWS_AS(parse_builtin("abc"), std::invalid_argument);
  CHECK(to_string(Builtin::lbv) == "LBV");
  CHECK(builtin(Builtin::fpi).genus() == 2);
}
