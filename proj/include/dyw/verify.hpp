#pragma once

// Inequality verification suites for a single weight.  Each suite checks
// one family of relations (mean orderings, scale invariance, summation
// bounds, classical-vs-summation comparability, the entropy/flatness
// bound, the maximal-function and Luxemburg sandwiches, the small-exponent
// limit probe, and the root envelope bound) and reports pass/fail with the
// largest observed violation.

#include <string>
#include <vector>

#include "dyw/dyadic.hpp"

namespace dyw {

struct SuiteResult {
  std::string name;
  bool pass = false;
  bool informational = false;  // never affects the overall verdict
  double max_violation = 0.0;  // largest (lhs - rhs) past tolerance, or 0
  std::string detail;
};

struct VerifyOptions {
  double p = 2.0;      // integrability exponent used by p-dependent suites
  double tol = 1e-9;   // additive slack for the inequality checks
};

// Runs every suite applicable to `w` (weak-type suites need depth >= 1)
// and returns the results sorted by suite name.
std::vector<SuiteResult> verify_weight(const DyadicWeight& w,
                                       const VerifyOptions& opt = {});

// True when every non-informational suite passed.
bool all_mandatory_pass(const std::vector<SuiteResult>& results);

}  // namespace dyw
