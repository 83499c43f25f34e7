#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace divcalc::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 1 on usage errors, 2 on domain errors (the diagnostic JSON
/// goes to `out`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Check {
  std::string suite;
  std::string name;
  double measured;
  double tolerance;
  bool pass;
};

/// Suites: identities, stieltjes, hilbert, fourier, remainder, all.
std::vector<Check> verify(std::string_view suite);

}  // namespace divcalc::cli
