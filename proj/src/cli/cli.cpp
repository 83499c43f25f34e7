#include "divcalc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <ostream>

#include "divcalc/contour_json.hpp"
#include "divcalc/errors.hpp"
#include "divcalc/expr.hpp"
#include "divcalc/interp.hpp"
#include "divcalc/transforms.hpp"

namespace divcalc::cli {
namespace {

using json = nlohmann::json;
using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

json real_or_marker(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double parse_real(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || std::isnan(v))
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "' as a number");
  return v;
}

json result_doc(cplx value, double err, std::string_view interp, json diagnostics) {
  json doc;
  doc["value_re"] = value.real();
  doc["value_im"] = value.imag();
  doc["abs_error_estimate"] = real_or_marker(err);
  doc["interpretation"] = std::string(interp);
  doc["diagnostics"] = std::move(diagnostics);
  return doc;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void emit(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  if (format == "csv") {
    for (std::size_t k = 0; k < rows.size(); ++k) out << (k ? "," : "") << rows[k].first;
    out << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) out << (k ? "," : "") << rows[k].second;
    out << '\n';
    return;
  }
  for (const auto& [key, value] : rows) out << key << ": " << value << '\n';
}

interp::Interpretation resolve_interp(const std::string& name) {
  try {
    return interp::builtin(interp::parse_builtin(name));
  } catch (const std::invalid_argument&) {
    if (auto found = interp::default_registry().find(name)) return *found;
    throw;
  }
}

json series_diagnostics(const transforms::SeriesEvaluation& s) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back(pair(t));
  return {{"cutoff", real_or_marker(s.cutoff)},
          {"rho", real_or_marker(s.rho)},
          {"terms_used", s.terms_used},
          {"series_value", pair(s.series_value)},
          {"correction", pair(s.correction)},
          {"total", pair(s.total)},
          {"converged", s.converged},
          {"status", std::string(transforms::to_string(s.status))},
          {"radius_bound", real_or_marker(s.radius_bound)},
          {"terms", terms}};
}

json radius_error_doc(const transforms::SeriesEvaluation& s, double omega) {
  return {{"error", std::string(to_string(ErrorKind::radius_exceeded))},
          {"message", "omega lies outside the radius of convergence of the series"},
          {"diagnostics", {{"omega", omega}, {"radius_bound", real_or_marker(s.radius_bound)}, {"converged", false}}}};
}

struct Settings {
  double tol = 1e-10;
  std::string output = "json";
  std::string interp = "fpi";
};

void add_common(CLI::App* sub, Settings& s, bool with_interp) {
  sub->add_option("--tol", s.tol, "absolute tolerance (default 1e-10 or $DIVCALC_TOL)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--output", s.output, "output format")->check(CLI::IsMember({"json", "csv", "human"}));
  if (with_interp) sub->add_option("--interp", s.interp, "interpretation: ubv, lbv, fpi or a registered name");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings settings;
  if (const char* env = std::getenv("DIVCALC_TOL")) {
    try {
      settings.tol = parse_real(env, "DIVCALC_TOL");
      if (!(settings.tol > 0.0)) throw std::invalid_argument("DIVCALC_TOL must be positive");
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }

  CLI::App app{"Divergent integrals under boundary-value and finite-part interpretations"};
  app.name("divcalc");
  app.require_subcommand(1);

  std::string f_text;
  double x0 = 0.0;
  int order = 1;
  std::string a_text = "-1";
  std::string b_text = "1";
  std::string oscillation = "none";
  std::optional<double> rho;
  std::optional<double> cutoff;
  bool emit_path = false;
  double omega = 0.0;
  std::size_t max_terms = 30;
  double sigma = 0.0;
  int n = 1;
  bool numeric = false;
  std::string preset;
  double a_pos = 1.0;
  int m = 1;
  std::optional<double> nu;
  std::string suite = "all";

  auto* divergent = app.add_subcommand("divergent", "value of int_a^b f(x)/(x-x0)^order dx");
  divergent->add_option("--f", f_text, "integrand f(z)")->required();
  divergent->add_option("--x0", x0, "pole location");
  divergent->add_option("--order", order, "pole order (n+1)")->check(CLI::PositiveNumber);
  divergent->add_option("--a", a_text, "lower limit (may be -inf)");
  divergent->add_option("--b", b_text, "upper limit (may be inf)");
  divergent->add_option("--oscillation", oscillation, "half-plane where f decays, for infinite tails")
      ->check(CLI::IsMember({"none", "upper", "lower"}));
  divergent->add_option("--rho", rho, "indentation radius");
  divergent->add_option("--cutoff", cutoff, "start of the tails on infinite intervals");
  divergent->add_flag("--emit-path-json", emit_path, "include the contour geometry");
  add_common(divergent, settings, true);

  auto* stieltjes = app.add_subcommand("stieltjes", "int f(x)/(omega^2+x^2) dx by term-by-term integration");
  stieltjes->add_option("--f", f_text, "integrand f(z)")->required();
  stieltjes->add_option("--omega", omega, "omega > 0")->required();
  stieltjes->add_option("--max-terms", max_terms, "series terms limit")->check(CLI::PositiveNumber);
  add_common(stieltjes, settings, true);

  auto* hilbert = app.add_subcommand("hilbert", "PV int f(x)/(omega-x) dx by term-by-term integration");
  hilbert->add_option("--f", f_text, "integrand f(z)")->required();
  hilbert->add_option("--omega", omega, "omega")->required();
  hilbert->add_option("--max-terms", max_terms, "series terms limit")->check(CLI::PositiveNumber);
  add_common(hilbert, settings, true);

  auto* fourier = app.add_subcommand("fourier", "closed form of int e^{i sigma x}(x-x0)^-n dx");
  fourier->add_option("--sigma", sigma, "frequency")->required();
  fourier->add_option("--x0", x0, "pole location");
  fourier->add_option("--n", n, "pole order")->check(CLI::PositiveNumber);
  fourier->add_flag("--numeric", numeric, "also evaluate along the contour");
  add_common(fourier, settings, true);

  auto* finite = app.add_subcommand("finite-sum", "term-by-term value of a finite expansion");
  finite->add_option("--preset", preset, "term list")->required()->check(CLI::IsMember({"sin2-over-x2"}));
  add_common(finite, settings, true);

  auto* halfline = app.add_subcommand("halfline", "finite part of int_0^a f(x)/x^(m+nu) dx");
  halfline->add_option("--f", f_text, "integrand f(z)")->required();
  halfline->add_option("--a", a_pos, "upper limit > 0")->required();
  halfline->add_option("--m", m, "integer part of the power")->check(CLI::PositiveNumber);
  halfline->add_option("--nu", nu, "fractional part of the power, in (0, 1)");
  add_common(halfline, settings, false);

  auto* remainder = app.add_subcommand("remainder", "remainder of the Stieltjes kernel expansion and its bound");
  remainder->add_option("--f", f_text, "integrand f(z)")->required();
  remainder->add_option("--omega", omega, "omega > 0")->required();
  remainder->add_option("--a", a_pos, "semicircle radius > omega")->required();
  remainder->add_option("--n", n, "number of expansion terms")->check(CLI::NonNegativeNumber);
  remainder->add_flag("--emit-path-json", emit_path, "include the contour geometry");
  add_common(remainder, settings, false);

  auto* verify_cmd = app.add_subcommand("verify", "check the identities against independent oracles");
  verify_cmd->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember({"identities", "stieltjes", "hilbert", "fourier", "remainder", "all"}));
  add_common(verify_cmd, settings, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const double tol = settings.tol;
    if (divergent->parsed()) {
      interp::Interpretation in = resolve_interp(settings.interp);
      interp::DivergentIntegralSpec spec{expr::parse_expression(f_text), x0, order, parse_real(a_text, "--a"),
                                         parse_real(b_text, "--b"), interp::Oscillation::none};
      if (oscillation == "upper") spec.oscillation = interp::Oscillation::upper;
      if (oscillation == "lower") spec.oscillation = interp::Oscillation::lower;
      interp::EvaluationOptions opts;
      opts.rho = rho;
      opts.cutoff = cutoff;
      auto r = interp::evaluate_divergent(spec, in, tol, opts);
      json contributions = json::array();
      for (const auto& c : r.diagnostics.path_contributions) contributions.push_back(pair(c));
      auto radius = expr::nearest_singularity_distance(spec.f, x0);
      json diag = {{"cutoff", r.diagnostics.cutoff ? json(*r.diagnostics.cutoff) : json(nullptr)},
                   {"rho", r.diagnostics.rho},
                   {"terms_used", 1},
                   {"series_value", pair(r.value)},
                   {"correction", pair(0.0)},
                   {"converged", r.diagnostics.converged},
                   {"radius_bound", radius ? real_or_marker(*radius) : json(nullptr)},
                   {"genus", in.genus()},
                   {"path_contributions", contributions},
                   {"tail", pair(r.diagnostics.tail)},
                   {"evaluations", r.diagnostics.evaluations}};
      json doc = result_doc(r.value, r.abs_error_estimate, in.name(), diag);
      if (emit_path) doc["path"] = contour::path_to_json(r.diagnostics.finite_path);
      emit(doc, settings.output, out);
      return 0;
    }
    if (stieltjes->parsed() || hilbert->parsed()) {
      interp::Interpretation in = resolve_interp(settings.interp);
      auto f = expr::parse_expression(f_text);
      transforms::SeriesOptions opts;
      opts.max_terms = max_terms;
      opts.tol = tol;
      auto s = stieltjes->parsed() ? transforms::stieltjes_series(f, omega, in, opts)
                                   : transforms::hilbert_series(f, omega, in, opts);
      if (s.status == transforms::SeriesStatus::radius_exceeded) {
        emit(radius_error_doc(s, omega), settings.output, out);
        return 2;
      }
      emit(result_doc(s.total, s.abs_error_estimate, in.name(), series_diagnostics(s)), settings.output, out);
      return 0;
    }
    if (fourier->parsed()) {
      interp::Builtin which = interp::parse_builtin(settings.interp);
      cplx closed = interp::fourier_closed_form(which, sigma, x0, n);
      json diag = {{"cutoff", nullptr},   {"rho", nullptr},     {"terms_used", 1},
                   {"series_value", pair(closed)}, {"correction", pair(0.0)}, {"converged", true},
                   {"radius_bound", "inf"}};
      double err_est = 0.0;
      if (numeric) {
        interp::DivergentIntegralSpec spec{expr::make_exponential(cplx(0.0, sigma)), x0, n, -kInf, kInf, interp::Oscillation::none};
        if (sigma > 0) spec.oscillation = interp::Oscillation::upper;
        if (sigma < 0) spec.oscillation = interp::Oscillation::lower;
        auto r = interp::evaluate_divergent(spec, interp::builtin(which), tol);
        diag["numeric"] = pair(r.value);
        diag["abs_diff"] = std::abs(r.value - closed);
        diag["cutoff"] = *r.diagnostics.cutoff;
        diag["rho"] = r.diagnostics.rho;
        err_est = r.abs_error_estimate;
      }
      emit(result_doc(closed, err_est, interp::to_string(which), diag), settings.output, out);
      return 0;
    }
    if (finite->parsed()) {
      interp::Interpretation in = resolve_interp(settings.interp);
      auto terms = transforms::sin2_over_x2_terms();
      cplx v = transforms::finite_sum_reconstruction(terms, in, tol);
      json diag = {{"cutoff", nullptr},     {"rho", nullptr},          {"terms_used", terms.size()},
                   {"series_value", pair(v)}, {"correction", pair(0.0)}, {"converged", true},
                   {"radius_bound", "inf"},   {"preset", preset}};
      emit(result_doc(v, tol, in.name(), diag), settings.output, out);
      return 0;
    }
    if (halfline->parsed()) {
      auto f = expr::parse_expression(f_text);
      cplx v = nu ? interp::fpi_halfline_fractional(f, a_pos, m, *nu, tol) : interp::fpi_halfline_integer(f, a_pos, m, tol);
      json diag = {{"cutoff", nullptr},       {"rho", nullptr},          {"terms_used", 1},
                   {"series_value", pair(v)}, {"correction", pair(0.0)}, {"converged", true},
                   {"radius_bound", nullptr}, {"m", m},                  {"nu", nu ? json(*nu) : json(0.0)}};
      emit(result_doc(v, tol, "FPI", diag), settings.output, out);
      return 0;
    }
    if (remainder->parsed()) {
      auto f = expr::parse_expression(f_text);
      auto r = transforms::remainder_diagnostics(f, omega, a_pos, n);
      json diag = {{"cutoff", a_pos},
                   {"rho", nullptr},
                   {"terms_used", n},
                   {"series_value", pair(0.0)},
                   {"correction", pair(0.0)},
                   {"converged", true},
                   {"radius_bound", nullptr},
                   {"bound", r.bound},
                   {"m_a", r.m_a},
                   {"m_literal", r.m_literal},
                   {"bound_holds", std::abs(r.remainder) <= r.bound}};
      json doc = result_doc(r.remainder, 0.0, "remainder", diag);
      if (emit_path) doc["path"] = contour::path_to_json(contour::build_semicircle(a_pos, contour::HalfPlane::upper));
      emit(doc, settings.output, out);
      return 0;
    }
    if (verify_cmd->parsed()) {
      auto checks = verify(suite);
      std::size_t failed = 0;
      for (const auto& c : checks) failed += c.pass ? 0 : 1;
      if (settings.output == "json") {
        json list = json::array();
        for (const auto& c : checks)
          list.push_back({{"suite", c.suite},
                          {"name", c.name},
                          {"measured", real_or_marker(c.measured)},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
        json doc = {{"suite", suite}, {"checks", list}, {"passed", checks.size() - failed}, {"failed", failed}};
        out << doc.dump(2) << '\n';
      } else if (settings.output == "csv") {
        out << "suite,name,measured,tolerance,pass\n";
        for (const auto& c : checks)
          out << c.suite << ',' << c.name << ',' << json(real_or_marker(c.measured)).dump() << ','
              << json(c.tolerance).dump() << ',' << (c.pass ? "true" : "false") << '\n';
      } else {
        for (const auto& c : checks)
          out << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.name << "  measured=" << c.measured
              << "  tol=" << c.tolerance << '\n';
        out << (checks.size() - failed) << " passed, " << failed << " failed\n";
      }
      return failed == 0 ? 0 : 3;
    }
  } catch (const DomainError& e) {
    json doc = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    emit(doc, settings.output, out);
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace divcalc::cli
