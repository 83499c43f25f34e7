#include <cmath>
#include <numbers>
#include <stdexcept>

#include "divcalc/interp.hpp"

namespace divcalc::interp {

cplx fourier_closed_form(Builtin interp, double sigma, double x0, int n) {
  if (n < 1) throw std::invalid_argument("fourier closed form: n must be >= 1");
  if (!std::isfinite(sigma) || !std::isfinite(x0)) throw std::invalid_argument("fourier closed form: non-finite input");
  const cplx i(0.0, 1.0);
  if (sigma == 0.0) {
    if (n != 1) return 0.0;
    switch (interp) {
      case Builtin::ubv: return i * std::numbers::pi;
      case Builtin::lbv: return -i * std::numbers::pi;
      case Builtin::fpi: return 0.0;
    }
  }
  cplx in(1.0);
  for (int k = 0; k < n; ++k) in *= i;
  cplx base = in * std::pow(sigma, n - 1) * std::polar(1.0, sigma * x0) / std::tgamma(static_cast<double>(n));
  switch (interp) {
    case Builtin::ubv: return sigma > 0.0 ? 2.0 * std::numbers::pi * base : cplx(0.0);
    case Builtin::lbv: return sigma < 0.0 ? -2.0 * std::numbers::pi * base : cplx(0.0);
    case Builtin::fpi: return std::numbers::pi * base * (sigma > 0.0 ? 1.0 : -1.0);
  }
  return 0.0;
}

}  // namespace divcalc::interp
