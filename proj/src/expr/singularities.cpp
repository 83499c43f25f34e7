#include <algorithm>
#include <cmath>

#include "divcalc/expr.hpp"

namespace divcalc::expr::detail {
namespace {

using Roots = std::vector<std::pair<cplx, int>>;

struct Info {
  std::vector<Singularity> list;
  bool known = true;
};

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

// Adds s to the list; coincident poles combine through `combine_orders`.
template <class Combine>
void insert(std::vector<Singularity>& list, const Singularity& s, Combine combine_orders) {
  for (auto& t : list) {
    if (!same_point(t.location, s.location)) continue;
    if (t.kind == SingularityKind::pole && s.kind == SingularityKind::pole) {
      t.order = combine_orders(t.order, s.order);
    } else if (t.kind == SingularityKind::essential || s.kind == SingularityKind::essential) {
      t.kind = SingularityKind::essential;
      t.order = 1;
    } else {
      t.kind = SingularityKind::branch_point;
      t.order = 1;
    }
    return;
  }
  list.push_back(s);
}

void insert_root(Roots& roots, cplx z, int mult) {
  for (auto& r : roots) {
    if (same_point(r.first, z)) {
      r.second += mult;
      return;
    }
  }
  roots.emplace_back(z, mult);
}

Info analyse(const Node& n);

// Zeros of the subexpression with multiplicities; nullopt when they cannot be
// enumerated.
std::optional<Roots> zeros(const Node& n) {
  if (auto p = as_polynomial(n)) {
    bool all_zero = std::all_of(p->begin(), p->end(), [](cplx c) { return c == cplx(0.0); });
    if (all_zero) return std::nullopt;
    return polynomial_roots(*p);
  }
  switch (n.op) {
    case Op::neg: return zeros(*n.lhs);
    case Op::exp: return Roots{};
    case Op::mul: {
      auto l = zeros(*n.lhs);
      auto r = zeros(*n.rhs);
      if (!l || !r) return std::nullopt;
      for (const auto& [z, m] : *r) insert_root(*l, z, m);
      return l;
    }
    case Op::div: {
      // Zeros of the numerator plus the poles of the denominator.
      auto l = zeros(*n.lhs);
      Info r = analyse(*n.rhs);
      if (!l || !r.known) return std::nullopt;
      for (const auto& s : r.list) {
        if (s.kind != SingularityKind::pole) return std::nullopt;
        insert_root(*l, s.location, s.order);
      }
      return l;
    }
    case Op::pow: {
      if (n.exponent > 0) {
        auto b = zeros(*n.lhs);
        if (!b) return std::nullopt;
        for (auto& r : *b) r.second *= n.exponent;
        return b;
      }
      Info b = analyse(*n.lhs);
      if (!b.known) return std::nullopt;
      Roots out;
      for (const auto& s : b.list) {
        if (s.kind != SingularityKind::pole) return std::nullopt;
        insert_root(out, s.location, s.order * -n.exponent);
      }
      return out;
    }
    default: return std::nullopt;
  }
}

Info analyse(const Node& n) {
  switch (n.op) {
    case Op::number:
    case Op::variable: return {};
    case Op::neg: return analyse(*n.lhs);
    case Op::add:
    case Op::sub: {
      Info l = analyse(*n.lhs);
      Info r = analyse(*n.rhs);
      for (const auto& s : r.list) insert(l.list, s, [](int a, int b) { return std::max(a, b); });
      l.known = l.known && r.known;
      return l;
    }
    case Op::mul: {
      Info l = analyse(*n.lhs);
      Info r = analyse(*n.rhs);
      for (const auto& s : r.list) insert(l.list, s, [](int a, int b) { return a + b; });
      l.known = l.known && r.known;
      return l;
    }
    case Op::div: {
      Info l = analyse(*n.lhs);
      Info r = analyse(*n.rhs);
      l.known = l.known && r.known;
      // Poles of the denominator are zeros of the quotient; other
      // denominator singularities survive.
      for (const auto& s : r.list) {
        if (s.kind != SingularityKind::pole)
          insert(l.list, s, [](int a, int b) { return a + b; });
      }
      auto z = zeros(*n.rhs);
      if (!z) {
        l.known = false;
        return l;
      }
      for (const auto& [loc, m] : *z)
        insert(l.list, Singularity{loc, SingularityKind::pole, m}, [](int a, int b) { return a + b; });
      return l;
    }
    case Op::pow: {
      if (n.exponent == 0) return {};
      Info b = analyse(*n.lhs);
      if (n.exponent > 0) {
        for (auto& s : b.list)
          if (s.kind == SingularityKind::pole) s.order *= n.exponent;
        return b;
      }
      Info out;
      out.known = b.known;
      for (const auto& s : b.list) {
        if (s.kind != SingularityKind::pole) out.list.push_back(s);
      }
      auto z = zeros(*n.lhs);
      if (!z) {
        out.known = false;
        return out;
      }
      for (const auto& [loc, m] : *z)
        insert(out.list, Singularity{loc, SingularityKind::pole, m * -n.exponent},
               [](int a, int b) { return a + b; });
      return out;
    }
    case Op::exp:
    case Op::sin:
    case Op::cos: {
      Info a = analyse(*n.lhs);
      for (auto& s : a.list) {
        if (s.kind == SingularityKind::pole) {
          s.kind = SingularityKind::essential;
          s.order = 1;
        }
      }
      return a;
    }
    case Op::log:
    case Op::sqrt: {
      Info a = analyse(*n.lhs);
      for (auto& s : a.list) {
        s.kind = SingularityKind::branch_point;
        s.order = 1;
      }
      if (auto z = zeros(*n.lhs)) {
        for (const auto& [loc, m] : *z)
          insert(a.list, Singularity{loc, SingularityKind::branch_point, 1}, [](int x, int) { return x; });
      }
      // The cut itself is not an isolated singularity.
      a.known = false;
      return a;
    }
  }
  return {};
}

}  // namespace

std::vector<Singularity> derive_singularities(const Node& root, Entirety& entirety) {
  Info info = analyse(root);
  if (!info.known) {
    entirety = Entirety::unknown;
  } else {
    entirety = info.list.empty() ? Entirety::entire : Entirety::meromorphic;
  }
  return info.list;
}

}  // namespace divcalc::expr::detail
