#pragma once
// Concave-envelope machinery on the average/log-average domain
//   Omega_Q = { z = (x, y) : 1 <= x e^{-y} <= Q },  x > 0,
// bounded below by the unit curve Gamma = { y = log x } (bracket 1) and
// above in bracket by the Q-curve Gamma_Q = { y = log(x/Q) }.
//
// The envelope is built from the implicit pair
//   f(t) = t - log t - 1 on (0,1],  g = f^{-1} : [0, infinity) -> (0,1],
// with gamma(Q) = g(log Q). For a point z in Omega_{Q0} the tangency
// parameter is alpha = y - log(x/Q0) in [0, log Q0], the tangency abscissa
// is v = gamma0 x / g(alpha), and the envelope value is
//   B(z; Q0) = x log v + (x - v)/gamma0,
// which restricts to x log x on Gamma and is positively homogeneous in the
// sense B(c x, y + log c; Q0) = c x log c + c B(x, y; Q0).

#include "dyw/dyadic.hpp"

#include <cstdint>
#include <vector>

namespace dyw {

struct Point {
  double x = 1.0;
  double y = 0.0;
};

// x e^{-y}, the defining bracket of a point.
double bracket_of(Point z);

// f(t) = t - log t - 1; requires t in (0, 1].
double eval_f(double t);

// Inverse of f on [0, infinity): bisection-safeguarded Newton with residual
// below ~1e-13. eval_g(0) = 1 exactly.
double eval_g(double alpha);

// gamma(Q) = eval_g(log Q); requires Q >= 1.
double gamma_of(double Q);

struct Tangent {
  double alpha = 0.0;   // y - log(x/Q0), distance-to-Q-curve parameter
  double gamma0 = 1.0;  // gamma(Q0)
  double v = 1.0;       // tangency abscissa gamma0 * x / g(alpha)
  double a = 1.0;       // v / gamma0
};

// Tangency data of z inside Omega_{Q0}; bracket checked with 1e-12 slack.
Tangent tangent_data(Point z, double Q0);

// Envelope value B(z; Q0); domain checked like tangent_data.
double bellman_value(Point z, double Q0);

// Canonical boundary triples (z_minus, z, z_plus) with z the midpoint:
//   minus_on_q:   z- on the Q-curve, z+ on the unit curve, r = sqrt(1-1/Q)
//   plus_on_q:    z- on the unit curve, z+ on the Q-curve, r = sqrt(1-1/Q)
//   both_on_unit: both children on the unit curve, r = sqrt(1-1/Q^2)
// In each case z = (1, log(1/Q)) sits on the Q-curve.
enum class BoundaryCase { minus_on_q, plus_on_q, both_on_unit };

struct Triple {
  Point minus, mid, plus;
};

Triple boundary_triple(BoundaryCase c, double Q);

// 2 B(mid; Q0) - B(minus; Q0) - B(plus; Q0) for a triple with brackets in
// [1, Q]; positive values certify midpoint concavity across the triple.
double triple_deficit(const Triple& t, double Q, double Q0);

// triple_deficit of the canonical triple for the case; Q0 >= Q required.
double delta_boundary(BoundaryCase c, double Q, double Q0);

// Enlargement solver: the least Q0 >= Q making the plus_on_q triple deficit
// vanish. `direct` bisects delta_boundary(plus_on_q, Q, .), which is
// nondecreasing in Q0; `scalar` solves the one-variable equation
//   (1-r)(log c + 1/c - 1 - log(1-r)) = (1+r) log(1+r)
// for c in (0,1] and maps back through Q0 = exp(f(c)). The scalar route
// drops the tangency offset and lands at or below the direct root.
enum class Q0Mode { direct, scalar };

struct Q0Result {
  double q0 = 1.0;
  double residual = 0.0;  // value of the solved equation at the root
};

Q0Result solve_q0(double Q, Q0Mode mode = Q0Mode::direct);

// Monte Carlo midpoint-concavity scan: samples triples with all three
// brackets in [1, Q] (midpoint by construction), evaluates the deficit in
// Omega_{Q0}, and keeps the minimum. Deterministic for a fixed seed.
struct ScanResult {
  double min_deficit = 0.0;
  std::uint64_t samples = 0;   // accepted triples
  std::uint64_t attempts = 0;  // proposals including rejected ones
  std::uint64_t seed = 0;
};

ScanResult concavity_scan(double Q, double Q0, std::uint64_t samples,
                          std::uint64_t seed);

// Largest bracket along the segment [z_minus, z_plus]: endpoint values and,
// when the stationary point t* lies inside (0,1), the closed-form interior
// value. interior reports whether t* was the maximizer.
struct SegmentMax {
  double value = 0.0;
  double t_star = 0.0;  // NaN when the maximum is at an endpoint
  bool interior = false;
};

SegmentMax segment_max_bracket(Point z_minus, Point z_plus);

// Two-child concavity deficit in tilted coordinates. With x_plus in [1, 2),
// x_minus = 2 - x_plus, child tangency parameters alpha_plus, alpha_minus
// >= 0 and the midpoint parameter determined by
//   2 alpha = alpha_plus + alpha_minus + log(x_plus (2 - x_plus)),
// returns
//   2 log(1/g(alpha)) - sum_pm x_pm log(x_pm / g(alpha_pm))
//   - 2/g(alpha) + sum_pm x_pm / g(alpha_pm).
// Q0 bounds the admissible parameters (alpha_pm <= log Q0 + slack).
// Throws std::domain_error when the derived alpha is negative.
double delta_general(double x_plus, double alpha_plus, double alpha_minus,
                     double Q0);

// Boundary vertices of the feasible parameter region at given (Q, Q0):
//   symmetric: alpha_plus = alpha_minus = log Q0,
//              x_plus in [1, 1 + sqrt(1 - 1/Q^2)]
//   mixed:     alpha_plus = log(Q0/Q), alpha_minus = log Q0,
//              x_plus in [1, 1 + sqrt(1 - 1/Q)]
// At the right endpoint the mixed vertex equals the plus_on_q boundary
// deficit, so it vanishes at the direct enlargement root.
enum class VertexKind { symmetric, mixed };

double vertex_delta(VertexKind kind, double x_plus, double Q, double Q0);

// Grid minimization of delta_general over the feasible set
//   alpha_pm in [log(Q0/Q), log Q0], alpha_plus + alpha_minus >= 2 alpha,
// with x_plus recovered from the alpha constraint, compared against the
// vertex candidates (the mixed vertex exists iff
// alpha <= log Q0 - log(Q)/2). match asserts
//   grid_min >= min(0, vertex values) - 1e-6.
struct RegionScan {
  double grid_min = 0.0;
  double vertex_symmetric = 0.0;
  double vertex_mixed = 0.0;
  bool has_mixed = false;
  bool match = true;
};

RegionScan delta_region_scan(double Q, double Q0, double alpha, int n);

// Root-entropy bound for a weight with bracket constant at most Q on all
// dyadic nodes: <w log w> <= B((<w>, <log w>); solve_q0(Q)) within
// 1e-10 * max(1, |B|).
struct RootBound {
  bool pass = true;
  double envelope = 0.0;   // B at the root point, enlarged domain
  double entropy = 0.0;    // <w log w> at the root
  double margin = 0.0;     // envelope - entropy
  double q0 = 1.0;
};

RootBound dyadic_bound_check(const DyadicWeight& w, double Q);

}  // namespace dyw
