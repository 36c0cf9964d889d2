#pragma once
// Convex profile families and the coefficients that sandwich the midpoint
// convexity gap by t^2 A''(x):
//
//   (q/2) t^2 A''(x)  <=  (A(x-t) + A(x+t))/2 - A(x)  <=  beta t^2 A''(x),
//
// where q comes from the triangular-kernel integral of A'' and beta is the
// family-specific supremum (finite outright for x^p and x log x, finite
// under a ratio cap t <= ((C-1)/C) x for x^{-1/(p-1)} and -log x).

#include "dyw/dyadic.hpp"

#include <limits>
#include <vector>

namespace dyw {

enum class FamilyTag { power, xlogx, negpower, signed_log };

// A two-parameter catalog of profiles A with A''(x) = k * x^{s-2} on x > 0:
//   power(p):    A = x^p,          k = p(p-1),      s = p        (p > 1)
//   xlogx:       A = x log x,      k = 1,           s = 1
//   negpower(p): A = x^{-1/(p-1)}, k = p/(p-1)^2,   s = -1/(p-1) (p > 1)
//   signed_log:  A = sign*log x,   k = -sign,       s = 0  (convex iff sign<0)
struct FunctionFamily {
  FamilyTag tag = FamilyTag::xlogx;
  double p = 0.0;
  int sign = -1;  // signed_log only

  double value(double x) const;
  double second_derivative(double x) const;
  bool convex() const;
  // k and s of A''(x) = k x^{s-2}; requires a convex member.
  double curvature_factor() const;
  double sum_exponent() const;
  const char* name() const;

  static FunctionFamily power(double p);
  static FunctionFamily xlogx();
  static FunctionFamily negpower(double p);
  static FunctionFamily neglog();
  static FunctionFamily poslog();
};

// A(x) - (A(x-t) + A(x+t))/2 + coef * t^2 * A''(x); requires 0 <= t < x.
// Nonnegative for coef = beta(family); nonpositive for coef = q/2.
double midpoint_deficit(const FunctionFamily& fam, double x, double t, double coef);

// Largest q with the triangular-kernel bound guaranteed a priori:
// 1 for power(2) (constant A''), 1/2 for the monotone-A'' members.
double guaranteed_q(const FunctionFamily& fam);

// inf over grid pairs of  integral_{-1}^{1} (1-|t|) A''(x+eps*t) dt / A''(x).
// Every pair must satisfy eps < x. Adaptive quadrature, tol ~1e-12.
double integral_q(const FunctionFamily& fam, const std::vector<double>& x_grid,
                  const std::vector<double>& eps_grid);

// inf over grid pairs (t < x) of ((A(x-t)+A(x+t))/2 - A(x)) / (t^2 A''(x)):
// the largest coefficient admissible on the lower side. Diagnostic.
double alpha_search(const FunctionFamily& fam, const std::vector<double>& x_grid,
                    const std::vector<double>& t_grid);

// beta for the family; `cap` is the ratio cap C (x/t <= C/(C-1)) and is
// required (finite, > 1) for negpower and -log, ignored for power and xlogx.
double beta_coefficient(const FunctionFamily& fam,
                        double cap = std::numeric_limits<double>::infinity());

// Midpoint-average ratio for the negative-power profile:
//   r(p, v) = (((1-v)^{-1/(p-1)} + (1+v)^{-1/(p-1)})/2 - 1) / v^2,  v in (0,1).
// beta(negpower(p), C) = (p-1)^2/p * r(p, (C-1)/C).
double negpower_midpoint_ratio(double p, double v);

// Closed-form cross-check of beta(negpower(p), C): the direct expression in
// C against the ratio route. `consistent` flags agreement within 1e-8.
struct BetaFormulaResult {
  double beta = 0.0;     // ratio route (authoritative)
  double printed = 0.0;  // direct C-expression
  bool consistent = true;
};
BetaFormulaResult beta_formula(double p, double cap);

// Checks that r(p, v) is nondecreasing on the given increasing grid
// (equivalently the capped beta grows with the cap). max_slope keeps the
// largest backward step r(v_i) - r(v_{i+1}); pass iff it is < 1e-12.
struct MonotonicityResult {
  bool pass = true;
  double max_slope = 0.0;
};
MonotonicityResult midpoint_ratio_monotonicity(double p,
                                               const std::vector<double>& v_grid);

// Summation-vs-gap checks over the subtree of J. With
//   S    = (1/|J|) sum_{internal I in J} delta(I)^2 A''(<w>_I) |I|,
//   gap  = <A(w)>_J - A(<w>_J),
// the upper check asserts S <= (8/q) gap and the lower check asserts
// S >= (1/beta) gap. For capped families the lower bound applies when the
// subtree's parent/child ratios stay within `cap` (doubling_ok).
struct BoundCheck {
  bool pass = true;
  double lhs = 0.0;       // S
  double rhs = 0.0;       // bound on the other side
  double margin = 0.0;    // rhs - lhs (upper) or lhs - rhs (lower)
  bool doubling_ok = true;
  double subtree_doubling = 1.0;
};
BoundCheck verify_upper_bound(const DyadicWeight& w, const FunctionFamily& fam,
                              NodeRef node);
BoundCheck verify_lower_bound(const DyadicWeight& w, const FunctionFamily& fam,
                              NodeRef node, double beta,
                              double cap = std::numeric_limits<double>::infinity());

// Coefficient bundle for one family: alpha = q/2, beta, q, and the cap the
// beta was computed at (infinity for the uncapped families).
struct CoefficientReport {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 0.0;
  double cap = std::numeric_limits<double>::infinity();
};
CoefficientReport coefficient_report(const FunctionFamily& fam,
                                     double cap = std::numeric_limits<double>::infinity());

}  // namespace dyw
