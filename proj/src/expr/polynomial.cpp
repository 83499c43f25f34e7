#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "divcalc/expr.hpp"

namespace divcalc::expr::detail {
namespace {

constexpr std::size_t kMaxDegree = 64;

using Poly = std::vector<cplx>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == cplx(0.0)) p.pop_back();
}

Poly add(const Poly& a, const Poly& b, double sign) {
  Poly r(std::max(a.size(), b.size()), cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

cplx horner(const Poly& p, cplx z) {
  cplx acc(0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {cplx(0.0)};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

}  // namespace

std::optional<std::vector<cplx>> as_polynomial(const Node& n) {
  switch (n.op) {
    case Op::number: return Poly{n.value};
    case Op::variable: return Poly{cplx(0.0), cplx(1.0)};
    case Op::add:
    case Op::sub: {
      auto l = as_polynomial(*n.lhs);
      if (!l) return std::nullopt;
      auto r = as_polynomial(*n.rhs);
      if (!r) return std::nullopt;
      return add(*l, *r, n.op == Op::add ? 1.0 : -1.0);
    }
    case Op::mul: {
      auto l = as_polynomial(*n.lhs);
      if (!l) return std::nullopt;
      auto r = as_polynomial(*n.rhs);
      if (!r) return std::nullopt;
      if (l->size() + r->size() - 2 > kMaxDegree) return std::nullopt;
      return mul(*l, *r);
    }
    case Op::neg: {
      auto l = as_polynomial(*n.lhs);
      if (!l) return std::nullopt;
      for (auto& c : *l) c = -c;
      return l;
    }
    case Op::pow: {
      if (n.exponent < 0) return std::nullopt;
      auto b = as_polynomial(*n.lhs);
      if (!b) return std::nullopt;
      if ((b->size() - 1) * static_cast<std::size_t>(n.exponent) > kMaxDegree) return std::nullopt;
      Poly r{cplx(1.0)};
      for (int k = 0; k < n.exponent; ++k) r = mul(r, *b);
      return r;
    }
    default: return std::nullopt;
  }
}

std::vector<std::pair<cplx, int>> polynomial_roots(std::vector<cplx> p) {
  trim(p);
  std::vector<std::pair<cplx, int>> out;
  // Factor out exact zeros at the origin first; they are common (z^k factors).
  int zero_mult = 0;
  while (p.size() > 1 && p.front() == cplx(0.0)) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.emplace_back(cplx(0.0), zero_mult);
  const std::size_t degree = p.size() - 1;
  if (degree == 0) return out;

  std::vector<cplx> roots;
  if (degree == 1) {
    roots.push_back(-p[0] / p[1]);
  } else if (degree == 2) {
    cplx a = p[2], b = p[1], c = p[0];
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    // Choose the sign that avoids cancellation.
    cplx q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0 ? disc : -disc));
    if (q == cplx(0.0)) {
      roots = {cplx(0.0), cplx(0.0)};
    } else {
      roots = {q / a, c / q};
    }
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / p[degree];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()(i));
    // Newton polish; harmless for clustered roots because steps are bounded.
    Poly dp = derivative(p);
    for (auto& r : roots) {
      for (int it = 0; it < 3; ++it) {
        cplx d = horner(dp, r);
        if (d == cplx(0.0)) break;
        cplx step = horner(p, r) / d;
        if (!(std::abs(step) < 1e-6 * std::max(1.0, std::abs(r)))) break;
        r -= step;
      }
    }
  }

  // Group numerically coincident roots; a root of multiplicity m is only
  // determined to about eps^(1/m), so the cluster mean is reported.
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= 1e-4 * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    cplx loc = sum / static_cast<double>(count);
    // Snap tiny components produced by round-off (e.g. +-i from 1+z^2).
    double scale = std::max(1.0, std::abs(loc));
    if (std::abs(loc.real()) < 1e-14 * scale) loc.real(0.0);
    if (std::abs(loc.imag()) < 1e-14 * scale) loc.imag(0.0);
    out.emplace_back(loc, count);
  }
  return out;
}

}  // namespace divcalc::expr::detail
