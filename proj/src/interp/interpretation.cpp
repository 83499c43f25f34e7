#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

#include "divcalc/interp.hpp"

namespace divcalc::interp {

Kernel Kernel::constant_value(cplx c) {
  Kernel k;
  k.constant = c;
  k.fn = [c](cplx) { return c; };
  return k;
}

Kernel Kernel::analytic(std::function<cplx(cplx)> g) {
  if (!g) throw std::invalid_argument("kernel: empty function");
  Kernel k;
  k.fn = std::move(g);
  return k;
}

PathTemplate PathTemplate::gamma_plus() {
  return {"gamma+",
          [](const PathContext& c) {
            return contour::build_indented_path(c.a, c.b, c.x0, c.rho, HalfPlane::upper);
          },
          HalfPlane::upper};
}

PathTemplate PathTemplate::gamma_minus() {
  return {"gamma-",
          [](const PathContext& c) {
            return contour::build_indented_path(c.a, c.b, c.x0, c.rho, HalfPlane::lower);
          },
          HalfPlane::lower};
}

Interpretation::Interpretation(std::string name, std::vector<KernelPath> pairs)
    : name_(std::move(name)), pairs_(std::move(pairs)) {
  if (name_.empty()) throw std::invalid_argument("interpretation: empty name");
  if (pairs_.empty()) throw std::invalid_argument("interpretation '" + name_ + "': no (kernel, path) pairs");
  for (const auto& p : pairs_) {
    if (!p.kernel.fn) throw std::invalid_argument("interpretation '" + name_ + "': empty kernel");
    if (!p.path.build) throw std::invalid_argument("interpretation '" + name_ + "': empty path template");
  }
}

std::optional<Interpretation::SideWeights> Interpretation::side_weights() const {
  SideWeights w{0.0, 0.0};
  for (const auto& p : pairs_) {
    if (!p.kernel.constant || !p.path.bump_side) return std::nullopt;
    (*p.path.bump_side == HalfPlane::upper ? w.upper : w.lower) += *p.kernel.constant;
  }
  return w;
}

std::string_view to_string(Builtin b) noexcept {
  switch (b) {
    case Builtin::ubv: return "UBV";
    case Builtin::lbv: return "LBV";
    case Builtin::fpi: return "FPI";
  }
  return "?";
}

Builtin parse_builtin(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "ubv") return Builtin::ubv;
  if (lower == "lbv") return Builtin::lbv;
  if (lower == "fpi") return Builtin::fpi;
  throw std::invalid_argument("unknown interpretation '" + std::string(name) + "' (expected ubv, lbv or fpi)");
}

const Interpretation& builtin(Builtin b) {
  static const Interpretation ubv("UBV", {{Kernel::constant_value(1.0), PathTemplate::gamma_minus()}});
  static const Interpretation lbv("LBV", {{Kernel::constant_value(1.0), PathTemplate::gamma_plus()}});
  static const Interpretation fpi("FPI", {{Kernel::constant_value(0.5), PathTemplate::gamma_plus()},
                                          {Kernel::constant_value(0.5), PathTemplate::gamma_minus()}});
  switch (b) {
    case Builtin::ubv: return ubv;
    case Builtin::lbv: return lbv;
    case Builtin::fpi: return fpi;
  }
  return fpi;
}

InterpretationRegistry::InterpretationRegistry() {
  for (Builtin b : {Builtin::ubv, Builtin::lbv, Builtin::fpi}) {
    const Interpretation& i = builtin(b);
    entries_.emplace(i.name(), std::make_shared<const Interpretation>(i));
  }
}

Interpretation InterpretationRegistry::add(std::string name, std::vector<KernelPath> pairs) {
  auto entry = std::make_shared<const Interpretation>(std::move(name), std::move(pairs));
  std::unique_lock lock(mutex_);
  if (entries_.count(entry->name()) != 0)
    throw std::invalid_argument("interpretation '" + entry->name() + "' is already registered");
  entries_.emplace(entry->name(), entry);
  return *entry;
}

std::optional<Interpretation> InterpretationRegistry::find(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return *it->second;
}

std::vector<std::string> InterpretationRegistry::names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

InterpretationRegistry& default_registry() {
  static InterpretationRegistry registry;
  return registry;
}

Interpretation register_interpretation(std::string name, std::vector<KernelPath> pairs) {
  return default_registry().add(std::move(name), std::move(pairs));
}

}  // namespace divcalc::interp
