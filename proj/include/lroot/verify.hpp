#pragma once

// Verification suites: exhaustive cross-checks of the closed forms against
// enumeration, run over ranges with deterministic, timing-free reports.

#include <map>
#include <string>
#include <vector>

#include "lroot/arith.hpp"

namespace lroot {

/// Suite names in the order they run and appear in reports.
const std::vector<std::string>& suite_names();

/// Default per-suite cap (the largest n or x enumerated).
u64 default_cap(const std::string& suite);
/// Largest cap a suite accepts.
u64 max_cap(const std::string& suite);

struct VerifyPlan {
  std::vector<std::string> suites;
  std::map<std::string, u64> bounds;  // missing entries use default_cap
  unsigned parallelism = 1;
};

/// Every suite at its default cap.
VerifyPlan full_plan(unsigned parallelism);

/// Throws std::invalid_argument for an unknown suite, a zero cap or a zero
/// worker count, and std::out_of_range for a cap above max_cap.
void validate(const VerifyPlan& plan);

/// One property checked over a range; `failures` keeps the first few
/// counterexamples.
struct Check {
  std::string name;
  u64 cap = 0;
  u64 checked = 0;
  u64 failed = 0;
  std::vector<std::string> failures;
  bool passed() const { return failed == 0 && checked > 0; }
};

struct SuiteResult {
  std::string name;
  u64 cap = 0;
  std::vector<Check> checks;
  /// Computed values reported alongside the checks (decimal strings).
  std::map<std::string, std::string> values;
  bool passed() const;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
  const SuiteResult* find(const std::string& suite) const;
};

VerifyReport run_verify(const VerifyPlan& plan);

/// Canonical JSON for a report: fixed key order, no timings.
std::string report_json(const VerifyReport& report);

}  // namespace lroot
