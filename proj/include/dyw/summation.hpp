#pragma once
// Square-difference summation functionals over dyadic trees:
//
//   sum(J, s) = (1/|J|) * sum over internal I inside J (including J) of
//               (delta(I)/<w>_I)^2 <w>_I^s |I|
//
// and the derived constants obtained by normalizing with a power of the
// local average (or of the parent average for the weak variant). These are
// two-sided comparable with the classical constants through the convexity
// coefficients: for profile A with A''(x) = k x^{s-2},
//   (1/(beta k)) gap <= sum <= (8/(q k)) gap,   gap = <A(w)>_J - A(<w>_J).

#include "dyw/convexity.hpp"
#include "dyw/dyadic.hpp"

#include <limits>
#include <string>
#include <vector>

namespace dyw {

enum class BuckleyTag {
  rhp,       // s = p,        normalizer <w>_J^p           (p >= 1)
  ap,        // s = -1/(p-1), normalizer <w>_J^{-1/(p-1)}  (p > 1)
  ainf,      // s = 0,        normalizer 1
  weak_rhp,  // s = p,        normalizer <w>_{parent(J)}^p, non-root J (p >= 1)
};

struct BuckleyKind {
  BuckleyTag tag = BuckleyTag::ainf;
  double p = 0.0;

  static BuckleyKind rhp(double p);
  static BuckleyKind ap(double p);
  static BuckleyKind ainf() { return {BuckleyTag::ainf, 0.0}; }
  static BuckleyKind weak_rhp(double p);
};

std::string buckley_name(const BuckleyKind& kind);

double buckley_sum(const DyadicWeight& w, NodeRef node, double s);

struct BuckleyResult {
  double value = 0.0;
  NodeRef argmax;
};

BuckleyResult buckley_constant(const DyadicWeight& w, BuckleyKind kind);

// Exponent-form and curvature-form sums against the convexity bounds at one
// node. ratio = sum/gap (0 when both vanish); bounds in exponent form.
struct RepresentationCheck {
  double sum = 0.0;                // exponent form
  double sum_curvature = 0.0;      // curvature form, equals k * sum
  double gap = 0.0;
  double ratio = 0.0;
  double bound_upper = 0.0;        // (8/(q k)) * gap
  double bound_lower = 0.0;        // (1/(beta k)) * gap
  bool pass_upper = true;
  bool pass_lower = true;
  bool doubling_exempt = false;    // lower bound skipped: ratios exceed cap
  double cap = 0.0;                // cap used for beta (inf when uncapped)
};

RepresentationCheck representation_check(
    const DyadicWeight& w, const FunctionFamily& fam, NodeRef node,
    double cap = std::numeric_limits<double>::infinity());

// One inequality lhs <= rhs with bookkeeping for the doubling-dependent
// directions (cap records the doubling constant the coefficient used).
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = true;
  bool doubling_dependent = false;
  double cap = 0.0;
};

struct ComparabilityReport {
  double p = 0.0;
  double doubling = 1.0;  // measured doubling constant of the weight
  std::vector<InequalityCheck> checks;
  bool all_ok = true;
};

// Two-sided comparisons between summation constants and classical constants
// for exponent p (> 1): strong RHp / RH1 / Ap / Ainf rows plus the weak
// parent-normalized rows. Doubling-dependent directions use the measured
// doubling constant as the cap, so they apply to every finite tree.
ComparabilityReport comparability_report(const DyadicWeight& w, double p);

}  // namespace dyw
