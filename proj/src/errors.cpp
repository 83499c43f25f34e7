#include "divcalc/errors.hpp"

namespace divcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::singularity_in_region: return "singularity_in_region";
    case ErrorKind::evaluation_at_singularity: return "evaluation_at_singularity";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::non_convergent: return "non_convergent";
    case ErrorKind::radius_exceeded: return "radius_exceeded";
    case ErrorKind::unknown_singularities: return "unknown_singularities";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::invalid_argument("at offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

}  // namespace divcalc
