#pragma once

// Identity batteries, grouped by scope. Every check is deterministic given
// (seed, samples): no timings or thread-dependent values enter the report.

#include "altzeta/eta_core.hpp"
#include "altzeta/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace altzeta {

struct SuiteOptions {
  /// exact, series, determinants, sampling, ensembles or all
  std::string scope = "all";
  std::uint64_t seed = 42;
  long samples = 20000;
  double guard = kDefaultGuard;
};

struct CheckResult {
  std::string scope;
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::size_t failures() const;
};

/// Throws Errc::DomainError for an unknown scope.
SuiteReport run_suite(const SuiteOptions& opt);

const std::vector<std::string>& suite_scopes();

/// Random s = x + iy, x, y uniform in [-r, r], redrawn while within `radius`
/// of 0 or of -2k (1 <= k <= N-1).
cplx random_s_outside_guards(CounterRng& rng, double r, int N, double radius);

}  // namespace altzeta
