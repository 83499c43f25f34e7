#include <cmath>
#include <cstdio>
#include <limits>

#include "divcalc/errors.hpp"
#include "divcalc/expr.hpp"

namespace divcalc::expr {
namespace {

cplx int_pow(cplx base, int k) noexcept {
  bool invert = k < 0;
  unsigned e = invert ? static_cast<unsigned>(-static_cast<long>(k)) : static_cast<unsigned>(k);
  cplx result(1.0, 0.0);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return invert ? cplx(1.0, 0.0) / result : result;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string node_to_string(const Node& n) {
  switch (n.op) {
    case Op::number: {
      // Parsed literals are either real or purely imaginary and non-negative.
      double re = n.value.real();
      double im = n.value.imag();
      if (im == 0.0) return re < 0 ? "(-" + format_double(-re) + ")" : format_double(re);
      if (re == 0.0) return im < 0 ? "(-" + format_double(-im) + "i)" : format_double(im) + "i";
      return "(" + node_to_string(Node{Op::number, {re, 0.0}, 0, nullptr, nullptr}) + "+" +
             node_to_string(Node{Op::number, {0.0, im}, 0, nullptr, nullptr}) + ")";
    }
    case Op::variable: return "z";
    case Op::add: return "(" + node_to_string(*n.lhs) + " + " + node_to_string(*n.rhs) + ")";
    case Op::sub: return "(" + node_to_string(*n.lhs) + " - " + node_to_string(*n.rhs) + ")";
    case Op::mul: return "(" + node_to_string(*n.lhs) + " * " + node_to_string(*n.rhs) + ")";
    case Op::div: return "(" + node_to_string(*n.lhs) + " / " + node_to_string(*n.rhs) + ")";
    case Op::neg: return "(-" + node_to_string(*n.lhs) + ")";
    case Op::pow: return "(" + node_to_string(*n.lhs) + "^" + std::to_string(n.exponent) + ")";
    case Op::exp: return "exp(" + node_to_string(*n.lhs) + ")";
    case Op::sin: return "sin(" + node_to_string(*n.lhs) + ")";
    case Op::cos: return "cos(" + node_to_string(*n.lhs) + ")";
    case Op::log: return "log(" + node_to_string(*n.lhs) + ")";
    case Op::sqrt: return "sqrt(" + node_to_string(*n.lhs) + ")";
  }
  return "?";
}

bool real_literals(const Node& n) {
  if (n.op == Op::number) return n.value.imag() == 0.0;
  if (n.lhs && !real_literals(*n.lhs)) return false;
  if (n.rhs && !real_literals(*n.rhs)) return false;
  return true;
}

[[noreturn]] void singular_at(cplx z) {
  throw DomainError(ErrorKind::evaluation_at_singularity,
                    "expression is singular at z = (" + format_double(z.real()) + ", " +
                        format_double(z.imag()) + ")");
}

cplx eval_checked(const Node& n, cplx z) {
  switch (n.op) {
    case Op::div: {
      cplx den = eval_checked(*n.rhs, z);
      if (den == cplx(0.0)) singular_at(z);
      return eval_checked(*n.lhs, z) / den;
    }
    case Op::pow: {
      cplx b = eval_checked(*n.lhs, z);
      if (n.exponent < 0 && b == cplx(0.0)) singular_at(z);
      return int_pow(b, n.exponent);
    }
    case Op::log: {
      cplx u = eval_checked(*n.lhs, z);
      if (u == cplx(0.0)) singular_at(z);
      return std::log(u);
    }
    case Op::add: return eval_checked(*n.lhs, z) + eval_checked(*n.rhs, z);
    case Op::sub: return eval_checked(*n.lhs, z) - eval_checked(*n.rhs, z);
    case Op::mul: return eval_checked(*n.lhs, z) * eval_checked(*n.rhs, z);
    case Op::neg: return -eval_checked(*n.lhs, z);
    case Op::exp: return std::exp(eval_checked(*n.lhs, z));
    case Op::sin: return std::sin(eval_checked(*n.lhs, z));
    case Op::cos: return std::cos(eval_checked(*n.lhs, z));
    case Op::sqrt: return std::sqrt(eval_checked(*n.lhs, z));
    case Op::number: return n.value;
    case Op::variable: return z;
  }
  return {};
}

}  // namespace

namespace detail {

cplx eval_node(const Node& n, cplx z) noexcept {
  switch (n.op) {
    case Op::number: return n.value;
    case Op::variable: return z;
    case Op::add: return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
    case Op::sub: return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
    case Op::mul: return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
    case Op::div: return eval_node(*n.lhs, z) / eval_node(*n.rhs, z);
    case Op::neg: return -eval_node(*n.lhs, z);
    case Op::pow: return int_pow(eval_node(*n.lhs, z), n.exponent);
    case Op::exp: return std::exp(eval_node(*n.lhs, z));
    case Op::sin: return std::sin(eval_node(*n.lhs, z));
    case Op::cos: return std::cos(eval_node(*n.lhs, z));
    case Op::log: return std::log(eval_node(*n.lhs, z));
    case Op::sqrt: return std::sqrt(eval_node(*n.lhs, z));
  }
  return {};
}

}  // namespace detail

AnalyticFunction::AnalyticFunction(NodePtr root, std::vector<Singularity> singularities,
                                   Entirety entirety)
    : root_(std::move(root)), singularities_(std::move(singularities)), entirety_(entirety) {
  if (!root_) throw std::invalid_argument("AnalyticFunction: null expression tree");
  for (const auto& s : singularities_) {
    if (s.kind == SingularityKind::pole && s.order < 1)
      throw std::invalid_argument("AnalyticFunction: pole order must be >= 1");
  }
  if (entirety_ == Entirety::entire && !singularities_.empty()) entirety_ = Entirety::meromorphic;
}

cplx AnalyticFunction::operator()(cplx z) const noexcept { return detail::eval_node(*root_, z); }

bool AnalyticFunction::has_real_coefficients() const { return real_literals(*root_); }

std::string AnalyticFunction::to_string() const { return node_to_string(*root_); }

AnalyticFunction AnalyticFunction::with_declared_singularities(std::vector<Singularity> singularities,
                                                               Entirety entirety) const {
  return AnalyticFunction(root_, std::move(singularities), entirety);
}

AnalyticFunction make_exponential(cplx k) {
  auto coef = std::make_shared<Node>();
  coef->op = Op::number;
  coef->value = k;
  auto var = std::make_shared<Node>();
  var->op = Op::variable;
  auto prod = std::make_shared<Node>();
  prod->op = Op::mul;
  prod->lhs = coef;
  prod->rhs = var;
  auto e = std::make_shared<Node>();
  e->op = Op::exp;
  e->lhs = prod;
  return AnalyticFunction(e, {}, Entirety::entire);
}

Evaluation evaluate(const AnalyticFunction& f, cplx z) {
  for (const auto& s : f.singularities()) {
    if (std::abs(z - s.location) <= 1e-14 * std::max(1.0, std::abs(s.location))) singular_at(z);
  }
  cplx v = eval_checked(f.root(), z);
  return {v, std::isfinite(v.real()) && std::isfinite(v.imag())};
}

std::optional<double> nearest_singularity_distance(const AnalyticFunction& f, cplx center) {
  if (f.entirety() == Entirety::unknown) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : f.singularities()) best = std::min(best, std::abs(s.location - center));
  return best;
}

}  // namespace divcalc::expr
