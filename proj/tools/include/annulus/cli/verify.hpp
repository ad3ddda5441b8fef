#pragma once

// Randomized invariant suites shared by `annulus verify` and the acceptance
// tests. Every suite is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

#include "annulus/core.hpp"

namespace annulus::cli {

struct VerifyOptions {
  TruncationPolicy policy;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  std::string title;
  int checks = 0;
  int failures = 0;
  /// Largest observed error divided by its tolerance over all checks.
  double worst_ratio = 0.0;
  std::string worst_check;
  std::vector<std::string> notes;  ///< first few failures, plus recorded measurements
  double seconds = 0.0;            ///< wall time; not part of the deterministic summary
  double time_budget = 0.0;

  bool passed() const { return checks > 0 && failures == 0; }
};

struct SuiteInfo {
  int id;
  const char* name;
  const char* title;
  double time_budget;  ///< seconds
  SuiteResult (*run)(const VerifyOptions&);
};

const std::vector<SuiteInfo>& verification_suites();

/// Looks up a suite by name or numeric id; throws DomainError if unknown.
const SuiteInfo& find_suite(const std::string& key);

/// Runs one suite, timing it. Exceptions escaping the suite are recorded as a
/// failed check rather than propagated.
SuiteResult run_suite(const SuiteInfo& suite, const VerifyOptions& options);

}  // namespace annulus::cli
