#pragma once

// JSON form of contour geometry: {"segments": [{"type": "line", "start": [re, im],
// "end": [re, im]}, {"type": "arc", "center": [re, im], "radius": r,
// "theta_start": t0, "theta_end": t1}, ...]}

#include <json.hpp>

#include "divcalc/contour.hpp"

namespace divcalc::contour {

inline nlohmann::json path_to_json(const ContourPath& path) {
  auto pt = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& s : path.segments()) {
    if (s.is_line()) {
      segments.push_back({{"type", "line"}, {"start", pt(s.as_line().start)}, {"end", pt(s.as_line().end)}});
    } else {
      const auto& a = s.as_arc();
      segments.push_back({{"type", "arc"},
                          {"center", pt(a.center)},
                          {"radius", a.radius},
                          {"theta_start", a.theta_start},
                          {"theta_end", a.theta_end}});
    }
  }
  return {{"segments", segments}};
}

}  // namespace divcalc::contour
