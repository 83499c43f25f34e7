#pragma once

// Complex-analytic integrands: parsing, evaluation, Cauchy-circle
// derivatives and singularity geometry.
//
// Grammar (whitespace is ignored):
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := base ('^' ['+' | '-'] integer)?
//   base   := number ['i'] | 'i' | 'z' | 'x' | func '(' expr ')' | '(' expr ')'
//   func   := 'exp' | 'sin' | 'cos' | 'log' | 'sqrt'
//
// 'x' and 'z' name the same variable. A number followed directly by 'i' is an
// imaginary literal ("2i"). log and sqrt use the principal branch (cut on the
// negative real axis).

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divcalc::expr {

using cplx = std::complex<double>;

enum class Op { number, variable, add, sub, mul, div, neg, pow, exp, sin, cos, log, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression tree node. `value` is used by Op::number, `exponent`
/// by Op::pow; unary ops and functions use `lhs` only.
struct Node {
  Op op = Op::number;
  cplx value{};
  int exponent = 0;
  NodePtr lhs;
  NodePtr rhs;
};

enum class SingularityKind { pole, branch_point, essential };

struct Singularity {
  cplx location{};
  SingularityKind kind = SingularityKind::pole;
  int order = 1;  // pole order; 1 for other kinds
};

/// What is known about the singularity set.
///   entire      - no finite singularities
///   meromorphic - singularities are isolated and all of them are listed
///   unknown     - the list may be incomplete (branch cuts, zeros of
///                 transcendental denominators, ...)
enum class Entirety { entire, meromorphic, unknown };

class AnalyticFunction {
 public:
  AnalyticFunction(NodePtr root, std::vector<Singularity> singularities, Entirety entirety);

  /// Raw evaluation. Never throws; returns inf/nan at singularities.
  cplx operator()(cplx z) const noexcept;

  const Node& root() const noexcept { return *root_; }
  const std::vector<Singularity>& singularities() const noexcept { return singularities_; }
  Entirety entirety() const noexcept { return entirety_; }

  /// True when every literal in the tree is real, so f(conj z) = conj f(z).
  bool has_real_coefficients() const;

  /// Fully parenthesized form that parses back to an identical tree.
  std::string to_string() const;

  /// Copy with user-declared singularity data replacing the derived data.
  AnalyticFunction with_declared_singularities(std::vector<Singularity> singularities,
                                               Entirety entirety) const;

 private:
  NodePtr root_;
  std::vector<Singularity> singularities_;
  Entirety entirety_;
};

AnalyticFunction parse_expression(std::string_view text);

/// e^{k z} built directly, without going through text.
AnalyticFunction make_exponential(cplx k);

struct Evaluation {
  cplx value;
  bool finite;
};

/// Checked evaluation: throws DomainError(evaluation_at_singularity) when z
/// coincides with a listed singularity or a denominator vanishes there;
/// overflow is reported through `finite`.
Evaluation evaluate(const AnalyticFunction& f, cplx z);

struct DerivativeResult {
  cplx value;
  double abs_error_estimate;
  std::size_t evaluations;
};

/// n-th derivative at x0 from the Cauchy integral formula on the circle
/// |z - x0| = radius, discretized with the periodic trapezoidal rule (which
/// converges geometrically for analytic integrands).
DerivativeResult derivative_at(const AnalyticFunction& f, cplx x0, int n, double radius);

/// Same, with the default radius min(1, d/2) where d is the distance to the
/// nearest singularity (0.5 when the singularity set is unknown).
DerivativeResult derivative_at(const AnalyticFunction& f, cplx x0, int n);

double default_derivative_radius(const AnalyticFunction& f, cplx x0);

/// Distance from `center` to the nearest singularity of f; +inf when f is
/// entire; std::nullopt when the singularity set cannot be certified.
std::optional<double> nearest_singularity_distance(const AnalyticFunction& f, cplx center);

// Building blocks shared by the parser and the singularity analysis.
namespace detail {
cplx eval_node(const Node& node, cplx z) noexcept;
std::vector<Singularity> derive_singularities(const Node& root, Entirety& entirety);
std::optional<std::vector<cplx>> as_polynomial(const Node& node);
/// Roots with multiplicities of a polynomial given low-to-high coefficients.
std::vector<std::pair<cplx, int>> polynomial_roots(std::vector<cplx> coefficients);
}  // namespace detail

}  // namespace divcalc::expr
