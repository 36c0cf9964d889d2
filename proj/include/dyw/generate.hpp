#pragma once
// Weight generators for experiments, a leafwise truncation, and a
// moment-constrained extremal search used to probe the envelope from below.

#include "dyw/dyadic.hpp"

#include <cstdint>
#include <vector>

namespace dyw {

struct GeneratorSpec {
  enum class Kind {
    constant,     // value a at every leaf
    two_value,    // depth-1 weight [a, b]
    power_like,   // exact cell averages of x^exponent on [0,1], exponent > -1
    cascade,      // random multiplicative cascade, child = parent*(1 +- eps)
    nondoubling,  // doubling constant >= bound while RH2 stays bounded
  };

  Kind kind = Kind::constant;
  int depth = 1;
  double a = 1.0;        // constant / two_value
  double b = 1.0;        // two_value
  double exponent = 0.0; // power_like
  double eps_max = 0.5;  // cascade, in (0, 1)
  double bound = 8.0;    // nondoubling target, > 1
  std::uint64_t seed = 0;
};

// Deterministic for a fixed spec (cascade draws from mt19937_64(seed) in
// breadth-first node order: epsilon then sign per internal node).
DyadicWeight generate(const GeneratorSpec& spec);

// Leafwise clamp to [1, n]; requires n >= 1. Keeps depth and root length.
DyadicWeight truncate(const DyadicWeight& w, double n);

// Searches m-piece positive step weights u on [0,1] with
//   <u> = x,  <log u> = y,  bracket <u>_I exp(-<log u>_I) <= Q on every
// dyadic node I of the m-piece tree, maximizing <u log u>. Random restarts
// plus moment-projected coordinate refinement; `budget` caps candidate
// evaluations. Deterministic for fixed arguments. The two-piece closed-form
// candidate is always evaluated, EVEN when the random phase finds nothing,
// so the search always returns a feasible weight.
struct OracleResult {
  double value = 0.0;             // best <u log u>
  std::vector<double> leaves;     // the maximizing weight
  std::uint64_t evaluations = 0;  // candidates actually scored
};

OracleResult extremal_search(double x, double y, double Q, int pieces,
                             std::uint64_t budget, std::uint64_t seed);

}  // namespace dyw
