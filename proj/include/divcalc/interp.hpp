#pragma once

// Interpretations of divergent integrals  int_a^b f(x) / (x - x0)^order dx
// as weighted sums of contour integrals, plus the epsilon-deletion oracle,
// half-line finite parts and closed forms for exponential integrands.

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "divcalc/contour.hpp"
#include "divcalc/expr.hpp"

namespace divcalc::interp {

using cplx = std::complex<double>;
using contour::ContourPath;
using contour::HalfPlane;
using expr::AnalyticFunction;

/// Analytic weight G(z) multiplying f(z)/(z - x0)^order on one path.
struct Kernel {
  std::function<cplx(cplx)> fn;
  std::optional<cplx> constant;  // set when G is constant

  static Kernel constant_value(cplx c);
  static Kernel analytic(std::function<cplx(cplx)> g);
  cplx operator()(cplx z) const { return constant ? *constant : fn(z); }
};

/// Finite geometry handed to path templates: the path must run from a to b
/// and stay at least rho away from x0.
struct PathContext {
  double a;
  double b;
  double x0;
  double rho;
};

struct PathTemplate {
  std::string name;
  std::function<ContourPath(const PathContext&)> build;
  /// Half-plane of the indentation around x0, when the path is an indented
  /// real segment. Needed to derive series correction terms.
  std::optional<HalfPlane> bump_side;

  static PathTemplate gamma_plus();   // bump above x0
  static PathTemplate gamma_minus();  // bump below x0
};

struct KernelPath {
  Kernel kernel;
  PathTemplate path;
};

class Interpretation {
 public:
  /// Throws std::invalid_argument for an empty name or an empty pair list.
  Interpretation(std::string name, std::vector<KernelPath> pairs);

  const std::string& name() const noexcept { return name_; }
  const std::vector<KernelPath>& pairs() const noexcept { return pairs_; }
  std::size_t genus() const noexcept { return pairs_.size(); }

  /// Total constant weight on upper-bump and lower-bump paths, when every
  /// kernel is constant and every path is an indented segment.
  struct SideWeights {
    cplx upper;
    cplx lower;
  };
  std::optional<SideWeights> side_weights() const;

 private:
  std::string name_;
  std::vector<KernelPath> pairs_;
};

enum class Builtin { ubv, lbv, fpi };

std::string_view to_string(Builtin b) noexcept;
/// Accepts "ubv", "lbv", "fpi" in any case.
Builtin parse_builtin(std::string_view name);
/// UBV: kernel 1 on gamma-; LBV: kernel 1 on gamma+; FPI: 1/2 on each.
const Interpretation& builtin(Builtin b);

/// Append-only, concurrently readable name -> Interpretation table.
class InterpretationRegistry {
 public:
  /// Pre-populated with "UBV", "LBV" and "FPI".
  InterpretationRegistry();

  /// Throws std::invalid_argument on a duplicate name or empty pairs.
  Interpretation add(std::string name, std::vector<KernelPath> pairs);
  std::optional<Interpretation> find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Interpretation>, std::less<>> entries_;
};

InterpretationRegistry& default_registry();
Interpretation register_interpretation(std::string name, std::vector<KernelPath> pairs);

/// Half-plane in which f decays, used to route infinite tails along tilted
/// rays instead of the real axis.
enum class Oscillation { none, upper, lower };

struct DivergentIntegralSpec {
  AnalyticFunction f;
  double x0 = 0.0;
  int order = 1;  // pole order n + 1
  double a = -1.0;  // may be -inf
  double b = 1.0;   // may be +inf
  Oscillation oscillation = Oscillation::none;
};

struct EvaluationOptions {
  std::optional<double> rho;     // indentation radius
  std::optional<double> cutoff;  // where the finite part ends on infinite intervals
  double ray_angle = 1.0471975511965976;  // pi / 3
};

struct EvaluationDiagnostics {
  double rho = 0.0;
  std::optional<double> cutoff;  // set for infinite limits
  std::vector<cplx> path_contributions;  // kernel-weighted, one per pair
  cplx tail{};                           // included in the value
  std::size_t evaluations = 0;
  bool converged = true;
  ContourPath finite_path;  // path of the first pair, for plotting
};

struct EvaluationResult {
  cplx value{};
  double abs_error_estimate = 0.0;
  EvaluationDiagnostics diagnostics;
};

/// Sum over the interpretation's pairs of int_C G(z) f(z)/(z - x0)^order dz.
/// Infinite limits use the symmetric cutoff convention when both are
/// infinite; tails are integrated exactly (mapped) or along tilted rays when
/// spec.oscillation is set.
EvaluationResult evaluate_divergent(const DivergentIntegralSpec& spec, const Interpretation& interp,
                                    double tol, const EvaluationOptions& options = {});

/// Indentation radius used when none is given: min(1, d)/2 with d the
/// distance from x0 to the nearest listed singularity of f, capped at half
/// the distance from x0 to a finite endpoint.
double default_rho(const DivergentIntegralSpec& spec);

struct OracleResult {
  cplx value{};
  double abs_error_estimate = 0.0;
};

/// Finite part by symmetric deletion: I(eps) - H(eps) on a geometric eps
/// sequence, then Richardson extrapolation in odd powers of eps.
OracleResult fpi_epsilon_oracle(const DivergentIntegralSpec& spec, const std::vector<double>& eps);
/// eps_j = eps0 2^-j, j = 0..8, eps0 = default_rho(spec) / 2.
OracleResult fpi_epsilon_oracle(const DivergentIntegralSpec& spec);

/// Finite part of int_0^a f(x) / x^m dx through the kernel (log z - i pi)/(2 pi i).
cplx fpi_halfline_integer(const AnalyticFunction& f, double a, int m, double tol);
/// Finite part of int_0^a f(x) / x^(m + nu) dx through the kernel 1/(e^{-2 pi i nu} - 1).
cplx fpi_halfline_fractional(const AnalyticFunction& f, double a, int m, double nu, double tol);

/// Closed form of int e^{i sigma x} (x - x0)^-n dx over the real line.
cplx fourier_closed_form(Builtin interp, double sigma, double x0, int n);

}  // namespace divcalc::interp
