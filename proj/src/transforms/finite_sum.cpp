#include <limits>
#include <stdexcept>

#include "divcalc/transforms.hpp"

namespace divcalc::transforms {

cplx finite_sum_reconstruction(const std::vector<TermSpec>& terms, const Interpretation& interp, double tol) {
  if (terms.empty()) throw std::invalid_argument("finite sum: no terms");
  if (!(tol > 0.0)) throw std::invalid_argument("finite sum: tolerance must be positive");
  double tol_each = tol / static_cast<double>(terms.size());
  cplx total(0.0);
  for (const auto& t : terms) {
    if (t.coefficient == cplx(0.0)) continue;
    total += t.coefficient * interp::evaluate_divergent(t.spec, interp, tol_each / std::abs(t.coefficient)).value;
  }
  return total;
}

std::vector<TermSpec> sin2_over_x2_terms() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  using interp::Oscillation;
  return {
      {-0.25, {expr::parse_expression("exp(2i*z)"), 0.0, 2, -inf, inf, Oscillation::upper}},
      {0.5, {expr::parse_expression("1"), 0.0, 2, -inf, inf, Oscillation::none}},
      {-0.25, {expr::parse_expression("exp(-2i*z)"), 0.0, 2, -inf, inf, Oscillation::lower}},
  };
}

}  // namespace divcalc::transforms
