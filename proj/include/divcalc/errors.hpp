#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divcalc {

/// Classification of numerical and analytic failures. Precondition
/// violations are reported separately as std::invalid_argument.
enum class ErrorKind {
  singularity_in_region,      // f is singular on the interval, bump, circle or keyhole
  evaluation_at_singularity,
  non_finite,                 // a sample evaluated to inf/nan
  non_convergent,             // quadrature, tail, or extrapolation failed
  radius_exceeded,
  unknown_singularities,      // the singularity set of f cannot be certified
};

std::string_view to_string(ErrorKind kind) noexcept;

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax errors and unknown identifiers in integrand expressions.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t offset, const std::string& message);

  /// Byte offset into the parsed text where the error was detected.
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace divcalc
