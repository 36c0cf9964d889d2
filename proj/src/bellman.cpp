#include "dyw/bellman.hpp"

#include "dyw/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dyw {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(std::string("dyw: ") + msg);
}

// f(t) = t - log t - 1 without the cancellation near t = 1. For t < 1/2 the
// d = t - 1 form would round t away entirely once t drops below one ulp of 1,
// so the plain expression (accurate there: -log t dominates) takes over.
double f_raw(double t) {
  const double d = t - 1.0;
  if (std::abs(d) < 1e-4)
    return d * d * (0.5 + d * (-1.0 / 3.0 + d * (0.25 - 0.2 * d)));
  if (t < 0.5) return t - std::log(t) - 1.0;
  return d - std::log1p(d);
}

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double bracket_of(Point z) { return z.x * std::exp(-z.y); }

double eval_f(double t) {
  if (!(t > 0.0 && t <= 1.0 + 1e-12))
    throw std::domain_error("dyw: eval_f needs t in (0, 1]");
  return f_raw(std::min(t, 1.0));
}

double eval_g(double alpha) {
  if (!(alpha >= -1e-12))
    throw std::domain_error("dyw: eval_g needs alpha >= 0");
  if (alpha <= 0.0) return 1.0;
  double lo = std::exp(-1.0 - alpha);       // f(lo) > alpha
  double hi = std::min(1.0, std::exp(-alpha));  // f(hi) <= alpha
  // Safeguarded Newton from the upper end. Because f is convex the iterates
  // approach the root from one side, so the far bracket end can stay stale;
  // the last evaluated point t is always the accurate answer, never the
  // bracket midpoint.
  double t = hi;
  for (int it = 0; it < 200; ++it) {
    const double r = f_raw(t) - alpha;  // decreasing in t
    if (r == 0.0) return t;
    if (r > 0.0)
      lo = t;
    else
      hi = t;
    if (hi - lo <= 4.0 * kEps * hi) return t;
    const double fp = 1.0 - 1.0 / t;  // negative on (0, 1)
    double tn = t - r / fp;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (tn == t) return t;
    t = tn;
  }
  return t;
}

double gamma_of(double Q) {
  if (!(Q >= 1.0 - 1e-12)) throw std::domain_error("dyw: gamma_of needs Q >= 1");
  return eval_g(std::log(std::max(Q, 1.0)));
}

Tangent tangent_data(Point z, double Q0) {
  require(std::isfinite(z.x) && std::isfinite(z.y) && z.x > 0.0,
          "point must be finite with x > 0");
  require(std::isfinite(Q0) && Q0 >= 1.0 - 1e-12, "domain needs Q0 >= 1");
  Q0 = std::max(Q0, 1.0);
  const double br = bracket_of(z);
  if (!(br >= 1.0 - 1e-12 && br <= Q0 * (1.0 + 1e-12)))
    throw std::domain_error("dyw: point bracket " + std::to_string(br) +
                            " outside [1, " + std::to_string(Q0) + "]");
  const double lq0 = std::log(Q0);
  double alpha = lq0 - (std::log(z.x) - z.y);
  alpha = std::min(std::max(alpha, 0.0), lq0);
  Tangent out;
  out.alpha = alpha;
  out.gamma0 = eval_g(lq0);
  const double ga = eval_g(alpha);
  out.v = z.x * (out.gamma0 / ga);
  out.a = z.x / ga;
  return out;
}

double bellman_value(Point z, double Q0) {
  const Tangent t = tangent_data(z, Q0);
  return z.x * std::log(t.v) + (z.x - t.v) / t.gamma0;
}

Triple boundary_triple(BoundaryCase c, double Q) {
  require(std::isfinite(Q) && Q >= 1.0, "boundary triple needs Q >= 1");
  const double lq = std::log(Q);
  Triple t;
  t.mid = {1.0, -lq};
  switch (c) {
    case BoundaryCase::minus_on_q: {
      const double r = std::sqrt(1.0 - 1.0 / Q);
      t.minus = {1.0 - r, std::log1p(-r) - lq};
      t.plus = {1.0 + r, std::log1p(r)};
      break;
    }
    case BoundaryCase::plus_on_q: {
      const double r = std::sqrt(1.0 - 1.0 / Q);
      t.minus = {1.0 - r, std::log1p(-r)};
      t.plus = {1.0 + r, std::log1p(r) - lq};
      break;
    }
    case BoundaryCase::both_on_unit: {
      const double r = std::sqrt(1.0 - 1.0 / (Q * Q));
      t.minus = {1.0 - r, std::log1p(-r)};
      t.plus = {1.0 + r, std::log1p(r)};
      break;
    }
  }
  return t;
}

double triple_deficit(const Triple& t, double Q, double Q0) {
  require(std::isfinite(Q) && Q >= 1.0, "triple needs Q >= 1");
  require(Q0 >= Q * (1.0 - 1e-12), "triple needs Q0 >= Q");
  for (const Point* z : {&t.minus, &t.mid, &t.plus}) {
    const double br = bracket_of(*z);
    if (!(br >= 1.0 - 1e-12 && br <= Q * (1.0 + 1e-12)))
      throw std::domain_error("dyw: triple point bracket " + std::to_string(br) +
                              " outside [1, " + std::to_string(Q) + "]");
  }
  return 2.0 * bellman_value(t.mid, Q0) - bellman_value(t.minus, Q0) -
         bellman_value(t.plus, Q0);
}

double delta_boundary(BoundaryCase c, double Q, double Q0) {
  return triple_deficit(boundary_triple(c, Q), Q, Q0);
}

Q0Result solve_q0(double Q, Q0Mode mode) {
  require(std::isfinite(Q) && Q >= 1.0, "solve_q0 needs Q >= 1");
  if (Q <= 1.0 + 1e-15) return {Q, 0.0};
  if (mode == Q0Mode::direct) {
    auto h = [&](double q0) { return delta_boundary(BoundaryCase::plus_on_q, Q, q0); };
    double lo = Q;
    const double h_lo = h(lo);
    if (h_lo >= 0.0) return {Q, h_lo};
    double hi = 2.0 * Q;
    int guard = 0;
    while (h(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 200 || !std::isfinite(hi))
        throw std::runtime_error(
            "dyw: solve_q0 found no sign change in [" + std::to_string(Q) + ", " +
            std::to_string(hi) + "]");
    }
    for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (h(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double q0 = 0.5 * (lo + hi);
    return {q0, h(q0)};
  }
  // Scalar route: solve (1-r)(log c + 1/c - 1 - log(1-r)) = (1+r) log(1+r)
  // for c in (0, 1]; s is strictly decreasing in c.
  const double r = std::sqrt(1.0 - 1.0 / Q);
  auto s = [&](double c) {
    return (1.0 - r) * (std::log(c) + 1.0 / c - 1.0 - std::log1p(-r)) -
           (1.0 + r) * std::log1p(r);
  };
  double hi = 1.0;
  double lo = 0.5;
  int guard = 0;
  while (s(lo) <= 0.0) {
    lo *= 0.5;
    if (++guard > 2000 || lo == 0.0)
      throw std::runtime_error("dyw: solve_q0 scalar bracketing failed");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (s(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double c = 0.5 * (lo + hi);
  return {std::exp(f_raw(c)), s(c)};
}

ScanResult concavity_scan(double Q, double Q0, std::uint64_t samples,
                          std::uint64_t seed) {
  require(std::isfinite(Q) && Q > 1.0, "concavity_scan needs Q > 1");
  require(Q0 >= Q * (1.0 - 1e-12), "concavity_scan needs Q0 >= Q");
  require(samples > 0, "concavity_scan needs samples > 0");
  std::mt19937_64 rng(seed);
  const double lq = std::log(Q);
  const double rho_scale = 0.25 * std::min(1.0, lq);
  ScanResult out;
  out.seed = seed;
  out.min_deficit = kInf;
  while (out.samples < samples) {
    ++out.attempts;
    if (out.attempts > 1000 * samples + 1000)
      throw std::runtime_error("dyw: concavity_scan acceptance rate too low");
    const double bx = u01(rng) * lq;
    const double x = std::exp(2.0 * u01(rng) - 1.0);
    const double y = std::log(x) - bx;
    const double rho = rho_scale * x * u01(rng);
    const double th = 2.0 * std::numbers::pi * u01(rng);
    const double dx = rho * std::cos(th);
    const double dy = rho * std::sin(th);
    const double bp = (x + dx) * std::exp(-(y + dy));
    const double bm = (x - dx) * std::exp(-(y - dy));
    if (!(bp >= 1.0 && bp <= Q && bm >= 1.0 && bm <= Q)) continue;
    ++out.samples;
    const double d = 2.0 * bellman_value({x, y}, Q0) -
                     bellman_value({x - dx, y - dy}, Q0) -
                     bellman_value({x + dx, y + dy}, Q0);
    out.min_deficit = std::min(out.min_deficit, d);
  }
  return out;
}

SegmentMax segment_max_bracket(Point z_minus, Point z_plus) {
  require(z_minus.x > 0.0 && z_plus.x > 0.0, "segment endpoints need x > 0");
  SegmentMax out;
  out.value = std::max(bracket_of(z_minus), bracket_of(z_plus));
  out.t_star = kNaN;
  const double dx = z_plus.x - z_minus.x;
  const double dy = z_plus.y - z_minus.y;
  if (dx != 0.0 && dy != 0.0) {
    const double t = 1.0 / dy - z_minus.x / dx;
    if (t > 0.0 && t < 1.0 && dx / dy > 0.0) {
      const double v =
          (dx / dy) * std::exp(-z_minus.y - 1.0 + dy * z_minus.x / dx);
      if (v > out.value) {
        out.value = v;
        out.t_star = t;
        out.interior = true;
      }
    }
  }
  return out;
}

double delta_general(double x_plus, double alpha_plus, double alpha_minus,
                     double Q0) {
  require(std::isfinite(Q0) && Q0 >= 1.0, "delta_general needs Q0 >= 1");
  require(x_plus >= 1.0 - 1e-12 && x_plus < 2.0,
          "delta_general needs x_plus in [1, 2)");
  x_plus = std::max(x_plus, 1.0);
  const double lq0 = std::log(Q0);
  for (double a : {alpha_plus, alpha_minus})
    if (!(a >= -1e-12 && a <= lq0 + 1e-9))
      throw std::domain_error("dyw: tilted parameter outside [0, log Q0]");
  alpha_plus = std::min(std::max(alpha_plus, 0.0), lq0);
  alpha_minus = std::min(std::max(alpha_minus, 0.0), lq0);
  const double x_minus = 2.0 - x_plus;
  const double alpha =
      0.5 * (alpha_plus + alpha_minus + std::log(x_plus * x_minus));
  if (alpha < -1e-12)
    throw std::domain_error("dyw: derived midpoint parameter is negative");
  const double ga = eval_g(std::max(alpha, 0.0));
  const double gp = eval_g(alpha_plus);
  const double gm = eval_g(alpha_minus);
  return 2.0 * std::log(1.0 / ga) - x_plus * std::log(x_plus / gp) -
         x_minus * std::log(x_minus / gm) - 2.0 / ga + x_plus / gp + x_minus / gm;
}

double vertex_delta(VertexKind kind, double x_plus, double Q, double Q0) {
  require(std::isfinite(Q) && Q >= 1.0, "vertex needs Q >= 1");
  require(Q0 >= Q * (1.0 - 1e-12), "vertex needs Q0 >= Q");
  const double lq0 = std::log(Q0);
  const double lq = std::log(Q);
  if (kind == VertexKind::symmetric) {
    const double rmax = std::sqrt(std::max(0.0, 1.0 - 1.0 / (Q * Q)));
    require(x_plus >= 1.0 - 1e-12 && x_plus <= 1.0 + rmax + 1e-9,
            "symmetric vertex x_plus out of range");
    return delta_general(std::min(x_plus, 2.0 - 1e-16), lq0, lq0, Q0);
  }
  const double rmax = std::sqrt(std::max(0.0, 1.0 - 1.0 / Q));
  require(x_plus >= 1.0 - 1e-12 && x_plus <= 1.0 + rmax + 1e-9,
          "mixed vertex x_plus out of range");
  return delta_general(std::min(x_plus, 2.0 - 1e-16), lq0 - lq, lq0, Q0);
}

RegionScan delta_region_scan(double Q, double Q0, double alpha, int n) {
  require(std::isfinite(Q) && Q > 1.0, "region scan needs Q > 1");
  require(Q0 >= Q * (1.0 - 1e-12), "region scan needs Q0 >= Q");
  require(n >= 2, "region scan needs n >= 2");
  const double lq0 = std::log(Q0);
  const double lo = lq0 - std::log(Q);
  require(alpha >= 0.0 && alpha <= lq0 + 1e-12, "alpha outside [0, log Q0]");
  alpha = std::min(alpha, lq0);
  RegionScan out;
  out.grid_min = kInf;
  for (int i = 0; i < n; ++i) {
    const double ap = lo + (lq0 - lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double am = lo + (lq0 - lo) * j / (n - 1);
      if (ap + am < 2.0 * alpha - 1e-15) continue;
      const double m = std::min(1.0, std::exp(2.0 * alpha - ap - am));
      const double x_plus = 1.0 + std::sqrt(std::max(0.0, 1.0 - m));
      out.grid_min =
          std::min(out.grid_min, delta_general(x_plus, ap, am, Q0));
    }
  }
  const double m_sym = std::min(1.0, std::exp(2.0 * (alpha - lq0)));
  const double x_sym = 1.0 + std::sqrt(std::max(0.0, 1.0 - m_sym));
  out.vertex_symmetric = delta_general(x_sym, lq0, lq0, Q0);
  out.has_mixed = alpha <= lq0 - 0.5 * std::log(Q) + 1e-12;
  double vertex_floor = out.vertex_symmetric;
  if (out.has_mixed) {
    const double m_mix = std::min(1.0, std::exp(2.0 * alpha - lq0 - lo));
    const double x_mix = 1.0 + std::sqrt(std::max(0.0, 1.0 - m_mix));
    out.vertex_mixed = delta_general(x_mix, lo, lq0, Q0);
    vertex_floor = std::min(vertex_floor, out.vertex_mixed);
  }
  out.match = out.grid_min >= std::min(0.0, vertex_floor) - 1e-6;
  return out;
}

RootBound dyadic_bound_check(const DyadicWeight& w, double Q) {
  require(std::isfinite(Q) && Q >= 1.0, "dyadic_bound_check needs Q >= 1");
  const double ainf = weight_constant(w, ConstantKind::ainf()).value;
  if (!(ainf <= Q * (1.0 + 1e-9)))
    throw std::invalid_argument(
        "dyw: weight bracket constant " + std::to_string(ainf) +
        " exceeds Q = " + std::to_string(Q));
  RootBound out;
  out.q0 = solve_q0(Q, Q0Mode::direct).q0;
  const NodeRef root = DyadicWeight::root();
  const Point z{w.average(root),
                leaf_average(w, root, [](double v) { return std::log(v); })};
  out.envelope = bellman_value(z, out.q0);
  out.entropy = leaf_average(w, root, [](double v) { return v * std::log(v); });
  out.margin = out.envelope - out.entropy;
  out.pass = out.entropy <=
             out.envelope + 1e-10 * std::max(1.0, std::abs(out.envelope));
  return out;
}

}  // namespace dyw
