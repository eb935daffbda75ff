#pragma once

// End-to-end consistency checks: every closed form against its brute-force
// density-matrix counterpart.

#include <iosfwd>
#include <string>
#include <vector>

#include "mixmetro/fisher.hpp"

namespace mixmetro {

enum class VerifyLevel { quick, full };

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // first offending point, or the worst deviation
  bool conjecture = false;  // tests an unproven formula; reported, never fatal
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  /// True when every non-conjecture check passed.
  bool ok() const;
  std::vector<CheckResult> failures() const;
  /// Conjecture checks that found a counterexample.
  std::vector<CheckResult> warnings() const;
};

/// quick: N <= 4, p step 0.1. full: N <= 6, p step 0.05.
/// `closed` replaces qfi_closed in the Fisher checks (for mutation testing).
VerifyReport run_verification(VerifyLevel level, const QfiClosedFn& closed = qfi_closed,
                              unsigned workers = 1);

/// One line per check (PASS, FAIL or WARN), then the first 10 failures.
void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace mixmetro
