#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "divcalc/cli.hpp"
#include "divcalc/interp.hpp"
#include "divcalc/transforms.hpp"

namespace divcalc::cli {
namespace {

using cplx = std::complex<double>;
using interp::Builtin;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI(0.0, 1.0);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void add(std::vector<Check>& out, const std::string& suite, std::string name, double measured, double tol) {
  out.push_back({suite, std::move(name), measured, tol, measured <= tol});
}

void identities(std::vector<Check>& out) {
  const std::string s = "identities";
  for (const char* text : {"exp(2i*z)", "exp(-z^2)", "cos(z)"}) {
    auto f = expr::parse_expression(text);
    for (double x0 : {-0.3, 0.0, 0.7}) {
      for (int n = 0; n <= 4; ++n) {
        interp::DivergentIntegralSpec spec{f, x0, n + 1, x0 - 2.0, x0 + 2.0, interp::Oscillation::none};
        cplx u = interp::evaluate_divergent(spec, interp::builtin(Builtin::ubv), 1e-12).value;
        cplx l = interp::evaluate_divergent(spec, interp::builtin(Builtin::lbv), 1e-12).value;
        cplx fp = interp::evaluate_divergent(spec, interp::builtin(Builtin::fpi), 1e-12).value;
        cplx d = expr::derivative_at(f, x0, n).value / std::tgamma(n + 1.0);
        std::string tag = std::string(text) + " x0=" + fmt(x0) + " n=" + std::to_string(n);
        add(out, s, "ubv-lbv " + tag, std::abs(u - l - 2.0 * kPi * kI * d), 1e-8);
        add(out, s, "average " + tag, std::abs(fp - 0.5 * (u + l)), 1e-8);
        add(out, s, "fpi-ubv " + tag, std::abs(fp - (u - kPi * kI * d)), 1e-8);
        add(out, s, "fpi-lbv " + tag, std::abs(fp - (l + kPi * kI * d)), 1e-8);
        add(out, s, "eps-oracle " + tag, std::abs(fp - interp::fpi_epsilon_oracle(spec).value), 1e-6);
      }
    }
  }
}

void stieltjes(std::vector<Check>& out) {
  const std::string s = "stieltjes";
  for (const char* text : {"exp(-z^2)", "cos(z)*exp(-z^2)"}) {
    auto f = expr::parse_expression(text);
    for (double w : {0.25, 0.5, 1.0}) {
      std::string tag = std::string(text) + " omega=" + fmt(w);
      cplx direct = transforms::stieltjes_direct(f, w, 1e-12);
      auto lbv = transforms::stieltjes_series(f, w, Builtin::lbv);
      auto ubv = transforms::stieltjes_series(f, w, Builtin::ubv);
      auto fpi = transforms::stieltjes_series(f, w, Builtin::fpi);
      double scale = std::max(1.0, std::abs(direct));
      add(out, s, "lbv-direct " + tag, std::abs(lbv.total - direct) / scale, 1e-6);
      add(out, s, "ubv-direct " + tag, std::abs(ubv.total - direct) / scale, 1e-6);
      add(out, s, "fpi-direct " + tag, std::abs(fpi.total - direct) / scale, 1e-6);
      add(out, s, "lbv-ubv " + tag, std::abs(lbv.total - ubv.total), 1e-8);
      add(out, s, "lbv-fpi " + tag, std::abs(lbv.total - fpi.total), 1e-8);
      cplx exchange = kPi / w * (f(-kI * w) - f(kI * w));
      add(out, s, "series-exchange " + tag, std::abs(lbv.series_value - ubv.series_value - exchange), 1e-6);
      add(out, s, "fpi-series-mean " + tag, std::abs(fpi.series_value - 0.5 * (lbv.series_value + ubv.series_value)),
          1e-8);
      add(out, s, "fpi-correction-mean " + tag, std::abs(fpi.correction - 0.5 * (lbv.correction + ubv.correction)),
          1e-8);
    }
  }
  auto one = transforms::stieltjes_series(expr::parse_expression("1"), 2.0, Builtin::fpi);
  add(out, s, "constant f: zero fpi series", std::abs(one.series_value), 1e-10);
  add(out, s, "constant f: total pi/omega", std::abs(one.total - kPi / 2.0), 1e-10);
}

void hilbert(std::vector<Check>& out) {
  const std::string s = "hilbert";
  auto f = expr::parse_expression("1/(1+z^2)");
  const double w = 0.5;
  const double closed = kPi * w / (1.0 + w * w);
  cplx pv = transforms::hilbert_pv(f, w, 1e-12);
  add(out, s, "pv vs residue closed form", std::abs(pv - closed) / closed, 1e-8);
  auto fpi = transforms::hilbert_series(f, w, Builtin::fpi);
  auto lbv = transforms::hilbert_series(f, w, Builtin::lbv);
  auto ubv = transforms::hilbert_series(f, w, Builtin::ubv);
  add(out, s, "fpi series total", std::abs(fpi.total - closed) / closed, 1e-6);
  add(out, s, "fpi correction is zero", std::abs(fpi.correction), 0.0);
  add(out, s, "lbv series total", std::abs(lbv.total - closed) / closed, 1e-6);
  add(out, s, "ubv series total", std::abs(ubv.total - closed) / closed, 1e-6);
  auto far = transforms::hilbert_series(f, 1.5, Builtin::fpi);
  add(out, s, "omega=1.5 flags radius", far.status == transforms::SeriesStatus::radius_exceeded ? 0.0 : 1.0, 0.0);

  auto g = expr::parse_expression("exp(-z^2)");
  cplx pv_g = transforms::hilbert_pv(g, w, 1e-12);
  auto fpi_g = transforms::hilbert_series(g, w, Builtin::fpi);
  add(out, s, "exp(-z^2) fpi series total", std::abs(fpi_g.total - pv_g) / std::max(1.0, std::abs(pv_g)), 1e-6);

  for (const char* text : {"exp(-z^2)", "1/(1+z^2)"}) {
    auto h = expr::parse_expression(text);
    auto sums = transforms::taylor_difference_partial_sums(h, w, 26, 1e-12);
    cplx target = 2.0 * kPi * kI * h(w);
    add(out, s, std::string("taylor difference k=25 ") + text, std::abs(sums.back() - target), 1e-6);
  }
}

void fourier(std::vector<Check>& out) {
  const std::string s = "fourier";
  for (Builtin b : {Builtin::ubv, Builtin::lbv, Builtin::fpi}) {
    for (double sigma : {-2.0, -1.0, 1.0, 2.0}) {
      for (int n = 1; n <= 3; ++n) {
        for (double x0 : {0.0, 0.5}) {
          interp::DivergentIntegralSpec spec{expr::make_exponential(kI * sigma), x0, n, -kInf, kInf,
                                             sigma > 0 ? interp::Oscillation::upper : interp::Oscillation::lower};
          cplx num = interp::evaluate_divergent(spec, interp::builtin(b), 1e-11).value;
          cplx closed = interp::fourier_closed_form(b, sigma, x0, n);
          std::string tag = std::string(interp::to_string(b)) + " sigma=" + fmt(sigma) + " n=" + std::to_string(n) +
                            " x0=" + fmt(x0);
          add(out, s, tag, std::abs(num - closed) / std::max(1.0, std::abs(closed)), 1e-6);
        }
      }
    }
  }
  auto terms = transforms::sin2_over_x2_terms();
  for (Builtin b : {Builtin::ubv, Builtin::lbv, Builtin::fpi}) {
    cplx v = transforms::finite_sum_reconstruction(terms, interp::builtin(b), 1e-11);
    add(out, s, std::string("sin^2 x/x^2 = pi under ") + std::string(interp::to_string(b)), std::abs(v - kPi), 1e-8);
  }
}

void remainder(std::vector<Check>& out) {
  const std::string s = "remainder";
  for (const char* text : {"1", "exp(-z^2)"}) {
    auto f = expr::parse_expression(text);
    double previous = kInf;
    for (int n = 1; n <= 10; ++n) {
      auto r = transforms::remainder_diagnostics(f, 0.5, 2.0, n);
      double mag = std::abs(r.remainder);
      std::string tag = std::string(text) + " n=" + std::to_string(n);
      add(out, s, "bound " + tag, mag / r.bound, 1.0);
      if (n > 2) add(out, s, "decreasing " + tag, mag / previous, 1.0);
      previous = mag;
    }
  }
}

}  // namespace

std::vector<Check> verify(std::string_view suite) {
  std::vector<Check> out;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "identities") identities(out), known = true;
  if (all || suite == "stieltjes") stieltjes(out), known = true;
  if (all || suite == "hilbert") hilbert(out), known = true;
  if (all || suite == "fourier") fourier(out), known = true;
  if (all || suite == "remainder") remainder(out), known = true;
  if (!known) throw std::invalid_argument("unknown verify suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace divcalc::cli
