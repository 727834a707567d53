// Built-in invariant suite behind the selftest command.

#pragma once

#include <ostream>
#include <set>
#include <string>

namespace xorrep {

struct SelftestOptions {
  std::set<std::string> scopes;  // empty runs every scope
  bool corrupt_cheby_weight = false;
};

const std::set<std::string>& selftest_scopes();

// Writes one "PASS <scope>: <check>" or "FAIL <scope>: <check>: <detail>"
// line per check and returns the number of failures.
int run_selftest(const SelftestOptions& opts, std::ostream& out);

}  // namespace xorrep
