#include "dyw/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dyw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(std::string("dyw: ") + msg);
}

// Even-order series for (((1+v)^a + (1-v)^a)/2 - 1) / v^2 with a real,
// convergent for |v| < 1; exact (terminating) for even integer a >= 2.
double binomial_even_ratio(double a, double v) {
  const double v2 = v * v;
  double coef = 0.5 * a * (a - 1.0);  // C(a, 2)
  double term = coef;
  double sum = term;
  double v_pow = 1.0;
  for (int k = 1; k < 500; ++k) {
    coef *= (a - 2.0 * k) * (a - 2.0 * k - 1.0) /
            ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    if (coef == 0.0) break;
    v_pow *= v2;
    term = coef * v_pow;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// (((u+1)^p + (u-1)^p)/2 - u^p) / u^{p-2} for u >= 1; the direct form
// cancels catastrophically for large u, so switch to the series in 1/u.
double power_spread_ratio(double p, double u) {
  if (u < 2.0) {
    const double num =
        0.5 * (std::pow(u + 1.0, p) + std::pow(u - 1.0, p)) - std::pow(u, p);
    return num / std::pow(u, p - 2.0);
  }
  return binomial_even_ratio(p, 1.0 / u);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

}  // namespace

double FunctionFamily::value(double x) const {
  require(x > 0.0, "profile argument must be positive");
  switch (tag) {
    case FamilyTag::power:
      return std::pow(x, p);
    case FamilyTag::xlogx:
      return x * std::log(x);
    case FamilyTag::negpower:
      return std::pow(x, -1.0 / (p - 1.0));
    case FamilyTag::signed_log:
      return sign * std::log(x);
  }
  throw std::logic_error("dyw: unreachable");
}

double FunctionFamily::second_derivative(double x) const {
  require(x > 0.0, "profile argument must be positive");
  switch (tag) {
    case FamilyTag::power:
      return p * (p - 1.0) * std::pow(x, p - 2.0);
    case FamilyTag::xlogx:
      return 1.0 / x;
    case FamilyTag::negpower: {
      const double m = -1.0 / (p - 1.0);
      return m * (m - 1.0) * std::pow(x, m - 2.0);
    }
    case FamilyTag::signed_log:
      return -sign / (x * x);
  }
  throw std::logic_error("dyw: unreachable");
}

bool FunctionFamily::convex() const {
  return tag != FamilyTag::signed_log || sign < 0;
}

double FunctionFamily::curvature_factor() const {
  if (!convex()) throw std::domain_error("dyw: family member is not convex");
  switch (tag) {
    case FamilyTag::power:
      return p * (p - 1.0);
    case FamilyTag::xlogx:
      return 1.0;
    case FamilyTag::negpower:
      return p / ((p - 1.0) * (p - 1.0));
    case FamilyTag::signed_log:
      return 1.0;
  }
  throw std::logic_error("dyw: unreachable");
}

double FunctionFamily::sum_exponent() const {
  if (!convex()) throw std::domain_error("dyw: family member is not convex");
  switch (tag) {
    case FamilyTag::power:
      return p;
    case FamilyTag::xlogx:
      return 1.0;
    case FamilyTag::negpower:
      return -1.0 / (p - 1.0);
    case FamilyTag::signed_log:
      return 0.0;
  }
  throw std::logic_error("dyw: unreachable");
}

const char* FunctionFamily::name() const {
  switch (tag) {
    case FamilyTag::power:
      return "power";
    case FamilyTag::xlogx:
      return "xlogx";
    case FamilyTag::negpower:
      return "negpower";
    case FamilyTag::signed_log:
      return sign < 0 ? "neglog" : "poslog";
  }
  return "unknown";
}

FunctionFamily FunctionFamily::power(double p) {
  require(std::isfinite(p) && p > 1.0, "power family needs p > 1");
  return {FamilyTag::power, p, -1};
}

FunctionFamily FunctionFamily::xlogx() { return {FamilyTag::xlogx, 0.0, -1}; }

FunctionFamily FunctionFamily::negpower(double p) {
  require(std::isfinite(p) && p > 1.0, "negpower family needs p > 1");
  return {FamilyTag::negpower, p, -1};
}

FunctionFamily FunctionFamily::neglog() { return {FamilyTag::signed_log, 0.0, -1}; }

FunctionFamily FunctionFamily::poslog() { return {FamilyTag::signed_log, 0.0, +1}; }

double midpoint_deficit(const FunctionFamily& fam, double x, double t, double coef) {
  require(x > 0.0 && t >= 0.0 && t < x, "midpoint_deficit needs 0 <= t < x");
  if (t == 0.0) return 0.0;
  const double avg = 0.5 * (fam.value(x - t) + fam.value(x + t));
  return fam.value(x) - avg + coef * t * t * fam.second_derivative(x);
}

double guaranteed_q(const FunctionFamily& fam) {
  if (!fam.convex()) throw std::domain_error("dyw: family member is not convex");
  if (fam.tag == FamilyTag::power && fam.p == 2.0) return 1.0;
  return 0.5;
}

double integral_q(const FunctionFamily& fam, const std::vector<double>& x_grid,
                  const std::vector<double>& eps_grid) {
  if (!fam.convex()) throw std::domain_error("dyw: family member is not convex");
  require(!x_grid.empty() && !eps_grid.empty(), "integral_q needs nonempty grids");
  double q = kInf;
  for (double x : x_grid) {
    require(x > 0.0, "integral_q grid x must be positive");
    const double ddx = fam.second_derivative(x);
    for (double eps : eps_grid) {
      require(eps > 0.0 && eps < x, "integral_q needs 0 < eps < x");
      auto f = [&](double t) {
        return (1.0 - std::abs(t)) * fam.second_derivative(x + eps * t);
      };
      const double tol = 1e-13 * std::max(1.0, ddx);
      const double val = integrate(f, -1.0, 0.0, tol) + integrate(f, 0.0, 1.0, tol);
      q = std::min(q, val / ddx);
    }
  }
  return q;
}

double alpha_search(const FunctionFamily& fam, const std::vector<double>& x_grid,
                    const std::vector<double>& t_grid) {
  if (!fam.convex()) throw std::domain_error("dyw: family member is not convex");
  double best = kInf;
  for (double x : x_grid)
    for (double t : t_grid) {
      if (!(t > 0.0 && t < x)) continue;
      const double gap = 0.5 * (fam.value(x - t) + fam.value(x + t)) - fam.value(x);
      best = std::min(best, gap / (t * t * fam.second_derivative(x)));
    }
  require(std::isfinite(best), "alpha_search found no admissible (x, t) pair");
  return best;
}

double negpower_midpoint_ratio(double p, double v) {
  require(p > 1.0, "negpower ratio needs p > 1");
  require(v > 0.0 && v < 1.0, "negpower ratio needs v in (0,1)");
  const double m = 1.0 / (p - 1.0);
  if (v < 0.25) return binomial_even_ratio(-m, v);
  const double avg = 0.5 * (std::pow(1.0 - v, -m) + std::pow(1.0 + v, -m));
  return (avg - 1.0) / (v * v);
}

double beta_coefficient(const FunctionFamily& fam, double cap) {
  if (!fam.convex()) throw std::domain_error("dyw: family member is not convex");
  switch (fam.tag) {
    case FamilyTag::power: {
      const double p = fam.p;
      auto ratio = [p](double log_u) { return power_spread_ratio(p, std::exp(log_u)); };
      double best = std::max(power_spread_ratio(p, 1.0), 0.5 * p * (p - 1.0));
      const int n = 4000;
      const double hi = std::log(1e9);
      double best_arg = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double lu = hi * i / n;
        const double val = ratio(lu);
        if (val > best) {
          best = val;
          best_arg = lu;
        }
      }
      const double lo_arg = std::max(0.0, best_arg - hi / n);
      const double hi_arg = std::min(hi, best_arg + hi / n);
      best = std::max(best, golden_max(ratio, lo_arg, hi_arg));
      return best / (p * (p - 1.0));
    }
    case FamilyTag::xlogx:
      return std::numbers::ln2;
    case FamilyTag::negpower: {
      require(std::isfinite(cap) && cap > 1.0, "capped beta needs cap > 1");
      const double v = (cap - 1.0) / cap;
      return (fam.p - 1.0) * (fam.p - 1.0) / fam.p *
             negpower_midpoint_ratio(fam.p, v);
    }
    case FamilyTag::signed_log: {
      require(std::isfinite(cap) && cap > 1.0, "capped beta needs cap > 1");
      const double v = (cap - 1.0) / cap;
      const double v2 = v * v;
      if (v < 0.25) {
        double sum = 0.0, pw = 1.0;
        for (int k = 1; k < 200; ++k) {
          const double term = pw / k;
          sum += term;
          pw *= v2;
          if (term <= 1e-18 * sum) break;
        }
        return 0.5 * sum;
      }
      return -std::log1p(-v2) / (2.0 * v2);
    }
  }
  throw std::logic_error("dyw: unreachable");
}

BetaFormulaResult beta_formula(double p, double cap) {
  require(p > 1.0, "beta_formula needs p > 1");
  require(std::isfinite(cap) && cap > 1.0, "beta_formula needs cap > 1");
  BetaFormulaResult out;
  out.beta = beta_coefficient(FunctionFamily::negpower(p), cap);
  const double m = 1.0 / (p - 1.0);
  const double scale = cap / (cap - 1.0);
  const double avg = 0.5 * (std::pow(1.0 / cap, -m) +
                            std::pow((2.0 * cap - 1.0) / cap, -m));
  out.printed = (p - 1.0) * (p - 1.0) / p * scale * scale * (avg - 1.0);
  out.consistent =
      std::abs(out.beta - out.printed) <= 1e-8 * std::max(1.0, std::abs(out.beta));
  return out;
}

MonotonicityResult midpoint_ratio_monotonicity(double p,
                                               const std::vector<double>& v_grid) {
  require(v_grid.size() >= 2, "monotonicity needs at least two grid points");
  MonotonicityResult out;
  double prev = negpower_midpoint_ratio(p, v_grid.front());
  for (std::size_t i = 1; i < v_grid.size(); ++i) {
    require(v_grid[i] > v_grid[i - 1], "monotonicity grid must increase");
    const double cur = negpower_midpoint_ratio(p, v_grid[i]);
    out.max_slope = std::max(out.max_slope, prev - cur);
    prev = cur;
  }
  out.pass = out.max_slope < 1e-12;
  return out;
}

namespace {

struct SubtreeSums {
  double sum_dd = 0.0;  // (1/|J|) sum delta^2 A''(<w>) |I|
  double gap = 0.0;     // <A(w)>_J - A(<w>_J)
  double doubling = 1.0;
};

SubtreeSums subtree_sums(const DyadicWeight& w, const FunctionFamily& fam,
                         NodeRef top) {
  SubtreeSums out;
  for_each_node(w, top, [&](NodeRef n) {
    if (n.level >= w.depth()) return;
    const double rel_len = 1.0 / static_cast<double>(std::int64_t{1} << (n.level - top.level));
    const double d = average_delta(w, n);
    out.sum_dd += d * d * fam.second_derivative(w.average(n)) * rel_len;
    const double a = w.average(n);
    out.doubling = std::max(out.doubling, a / w.average(DyadicWeight::left(n)));
    out.doubling = std::max(out.doubling, a / w.average(DyadicWeight::right(n)));
  });
  out.gap = leaf_average(w, top, [&](double v) { return fam.value(v); }) -
            fam.value(w.average(top));
  return out;
}

}  // namespace

BoundCheck verify_upper_bound(const DyadicWeight& w, const FunctionFamily& fam,
                              NodeRef node) {
  const SubtreeSums s = subtree_sums(w, fam, node);
  BoundCheck out;
  out.lhs = s.sum_dd;
  out.rhs = (8.0 / guaranteed_q(fam)) * s.gap;
  out.margin = out.rhs - out.lhs;
  out.pass = out.lhs <= out.rhs + 1e-10 * std::max(1.0, std::abs(out.rhs));
  out.subtree_doubling = s.doubling;
  return out;
}

BoundCheck verify_lower_bound(const DyadicWeight& w, const FunctionFamily& fam,
                              NodeRef node, double beta, double cap) {
  require(beta > 0.0, "verify_lower_bound needs beta > 0");
  const SubtreeSums s = subtree_sums(w, fam, node);
  BoundCheck out;
  out.lhs = s.sum_dd;
  out.rhs = s.gap / beta;
  out.margin = out.lhs - out.rhs;
  out.pass = out.lhs >= out.rhs - 1e-10 * std::max(1.0, std::abs(out.rhs));
  out.subtree_doubling = s.doubling;
  out.doubling_ok = s.doubling <= cap * (1.0 + 1e-12);
  return out;
}

CoefficientReport coefficient_report(const FunctionFamily& fam, double cap) {
  CoefficientReport out;
  out.q = guaranteed_q(fam);
  out.alpha = 0.5 * out.q;
  out.beta = beta_coefficient(fam, cap);
  const bool capped =
      fam.tag == FamilyTag::negpower || fam.tag == FamilyTag::signed_log;
  out.cap = capped ? cap : kInf;
  return out;
}

}  // namespace dyw
