#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swave {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // empty on success, diagnostic on failure
};

/// Run the library's built-in invariant suite: exact algebraic identities
/// of the schemes, the closed-form mesh eigenvalues, noise-path coupling,
/// statistical sanity of the increments and format round trips.
std::vector<CheckResult> run_selftest();

/// Print one line per check; returns true when every check passed.
bool report_selftest(std::ostream& out);

}  // namespace swave
