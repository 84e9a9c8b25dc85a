#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "framelab/io.hpp"

namespace framelab {

struct SuiteContext {
  std::uint64_t seed = 0;
  TolerancePolicy tol;
};

struct CheckOutcome {
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;  // first failure, or empty
};

struct SuiteCheck {
  std::string name;
  std::string description;
  std::function<CheckOutcome(const SuiteContext&)> run;
};

/// Every registered invariant check, in a fixed order.
const std::vector<SuiteCheck>& suite_checks();

/// Runs the checks whose names appear in `only` (all when empty). Throws
/// InvalidArgument on unknown names. The report carries no timings, so a
/// fixed context always reproduces the same bytes.
Json run_suite(const SuiteContext& ctx, const std::vector<std::string>& only = {});

/// True iff every check in a run_suite report passed.
bool suite_passed(const Json& report);

}  // namespace framelab
