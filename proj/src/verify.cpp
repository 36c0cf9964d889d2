#include "dyw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dyw/bellman.hpp"
#include "dyw/constants.hpp"
#include "dyw/convexity.hpp"
#include "dyw/summation.hpp"

namespace dyw {
namespace {

double rel_excess(double lhs, double rhs) {
  return (lhs - rhs) / std::max(1.0, std::abs(rhs));
}

// Accumulates the worst normalized violation; the suite passes when the
// worst one stays within tolerance.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  void feed(double v) { value = std::max(value, v); }
  double positive() const { return std::max(0.0, value); }
};

SuiteResult run_suite(const std::string& name, double tol,
                      const std::function<Worst(std::string&)>& body) {
  SuiteResult r;
  r.name = name;
  try {
    std::string detail;
    const Worst w = body(detail);
    r.pass = w.value <= tol;
    r.max_violation = w.positive();
    r.detail = detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.max_violation = std::numeric_limits<double>::quiet_NaN();
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

double llogl(double t) { return t * std::log(std::numbers::e + t); }

}  // namespace

std::vector<SuiteResult> verify_weight(const DyadicWeight& w,
                                       const VerifyOptions& opt) {
  if (!(opt.p > 1.0))
    throw std::invalid_argument("dyw: verify needs p > 1");
  const double tol = opt.tol;
  std::vector<SuiteResult> out;

  out.push_back(run_suite("comparability", tol, [&](std::string& detail) {
    Worst worst;
    const ComparabilityReport rep = comparability_report(w, opt.p);
    for (const InequalityCheck& c : rep.checks)
      worst.feed(rel_excess(c.lhs, c.rhs));
    std::ostringstream os;
    os << rep.checks.size() << " inequalities, measured doubling "
       << rep.doubling;
    detail = os.str();
    return worst;
  }));

  out.push_back(run_suite("entropy_flatness", tol, [&](std::string& detail) {
    Worst worst;
    const double rh1 = weight_constant(w, ConstantKind::rh1()).value;
    const double ainf = weight_constant(w, ConstantKind::ainf()).value;
    const double bound = std::log(16.0) * ainf;
    worst.feed(rel_excess(rh1, bound));
    std::ostringstream os;
    os << "ratio " << (bound > 0.0 ? rh1 / bound : 0.0) << " of the bound";
    detail = os.str();
    return worst;
  }));

  out.push_back(run_suite("limit_probe", tol, [&](std::string& detail) {
    Worst worst;
    const double avg = w.average(DyadicWeight::root());
    const double target = entropy_gap(w, DyadicWeight::root()) / avg;
    const double ps[4] = {1.1, 1.01, 1.001, 1.0001};
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double p : ps) {
      last = rh1_limit_probe(w, p);
      worst.feed(last - prev);  // the probe decreases towards the limit
      prev = last;
    }
    worst.feed(std::abs(last - target) - 0.01 * target);
    std::ostringstream os;
    os << "probe " << last << " vs integrand " << target;
    detail = os.str();
    return worst;
  }));

  out.push_back(run_suite("luxemburg_sandwich", tol, [&](std::string& detail) {
    Worst worst;
    std::size_t nodes = 0;
    for_each_node(w, DyadicWeight::root(), [&](NodeRef node) {
      const double lux = luxemburg_norm(w, node, llogl);
      const double mid = stein_average(w, node);
      const double scale = std::max(1.0, lux);
      worst.feed((lux - mid) / scale);
      worst.feed((mid - 2.0 * lux) / scale);
      ++nodes;
    });
    detail = std::to_string(nodes) + " nodes";
    return worst;
  }));

  out.push_back(run_suite("maximal_sandwich", tol, [&](std::string& detail) {
    Worst worst;
    std::size_t nodes = 0;
    for_each_node(w, DyadicWeight::root(), [&](NodeRef node) {
      const double m = maximal_average(w, node);
      const double mid = stein_average(w, node);
      const double scale = std::max(1.0, m);
      worst.feed((m / 3.0 - mid) / scale);
      worst.feed((mid - 2.0 * m) / scale);
      ++nodes;
    });
    detail = std::to_string(nodes) + " nodes";
    return worst;
  }));

  out.push_back(run_suite("means_ordering", tol, [&](std::string& detail) {
    Worst worst;
    const auto log_prof = profile_averages(w, [](double v) { return std::log(v); });
    const auto pow_prof =
        profile_averages(w, [&](double v) { return std::pow(v, opt.p); });
    std::size_t nodes = 0;
    for_each_node(w, DyadicWeight::root(), [&](NodeRef node) {
      const std::size_t id = static_cast<std::size_t>(w.node_id(node));
      const double avg = w.average(node);
      const double geo = std::exp(log_prof[id]);
      const double pmean = std::pow(pow_prof[id], 1.0 / opt.p);
      worst.feed((geo - avg) / avg);
      worst.feed((avg - pmean) / avg);
      ++nodes;
    });
    detail = std::to_string(nodes) + " nodes";
    return worst;
  }));

  out.push_back(run_suite("root_envelope", tol, [&](std::string& detail) {
    Worst worst;
    const double q = weight_constant(w, ConstantKind::ainf()).value;
    const RootBound rb = dyadic_bound_check(w, q);
    worst.feed(rel_excess(rb.entropy, rb.envelope));
    std::ostringstream os;
    os << "envelope " << rb.envelope << " vs entropy " << rb.entropy
       << " at Q0 " << rb.q0;
    detail = os.str();
    return worst;
  }));

  out.push_back(run_suite("scale_invariance", tol, [&](std::string& detail) {
    Worst worst;
    std::vector<double> scaled_leaves = w.leaves();
    for (double& v : scaled_leaves) v *= 3.5;
    const DyadicWeight scaled(std::move(scaled_leaves), w.root_length());
    std::vector<ConstantKind> kinds = {
        ConstantKind::ainf(), ConstantKind::rh1(),
        ConstantKind::rh1_via_maximal(), ConstantKind::rh1_via_luxemburg(),
        ConstantKind::ap(opt.p), ConstantKind::rhp(opt.p)};
    if (w.depth() >= 1) {
      kinds.push_back(ConstantKind::weak_rhp(opt.p));
      kinds.push_back(ConstantKind::weak_rh1());
      kinds.push_back(ConstantKind::weak_rh1_via_luxemburg());
    }
    std::size_t count = 0;
    for (const ConstantKind& kind : kinds) {
      const double a = weight_constant(w, kind).value;
      const double b = weight_constant(scaled, kind).value;
      worst.feed(std::abs(a - b) / std::max(1.0, std::abs(a)));
      ++count;
    }
    std::vector<BuckleyKind> sums = {BuckleyKind::rhp(opt.p),
                                     BuckleyKind::ap(opt.p),
                                     BuckleyKind::ainf()};
    if (w.depth() >= 1) sums.push_back(BuckleyKind::weak_rhp(opt.p));
    for (const BuckleyKind& kind : sums) {
      const double a = buckley_constant(w, kind).value;
      const double b = buckley_constant(scaled, kind).value;
      worst.feed(std::abs(a - b) / std::max(1.0, std::abs(a)));
      ++count;
    }
    detail = std::to_string(count) + " constants at factor 3.5";
    return worst;
  }));

  out.push_back(run_suite("summation_lower", tol, [&](std::string& detail) {
    Worst worst;
    const double doubling = std::max(doubling_constant(w), 1.0 + 1e-9);
    struct Entry {
      FunctionFamily fam;
      double cap;
    };
    const Entry entries[4] = {
        {FunctionFamily::power(2.0), std::numeric_limits<double>::infinity()},
        {FunctionFamily::xlogx(), std::numeric_limits<double>::infinity()},
        {FunctionFamily::negpower(opt.p), doubling},
        {FunctionFamily::neglog(), doubling}};
    std::size_t checks = 0;
    for (const Entry& e : entries) {
      const double beta = beta_coefficient(e.fam, e.cap);
      for_each_node(w, DyadicWeight::root(), [&](NodeRef node) {
        const BoundCheck r = verify_lower_bound(w, e.fam, node, beta, e.cap);
        if (!r.doubling_ok) return;  // cap exceeded: bound not claimed
        worst.feed(rel_excess(r.rhs, r.lhs));
        ++checks;
      });
    }
    detail = std::to_string(checks) + " node checks over 4 profiles";
    return worst;
  }));

  out.push_back(run_suite("summation_upper", tol, [&](std::string& detail) {
    Worst worst;
    const FunctionFamily fams[5] = {
        FunctionFamily::power(2.0), FunctionFamily::power(1.5),
        FunctionFamily::power(3.0), FunctionFamily::xlogx(),
        FunctionFamily::neglog()};
    std::size_t checks = 0;
    for (const FunctionFamily& fam : fams) {
      for_each_node(w, DyadicWeight::root(), [&](NodeRef node) {
        const BoundCheck r = verify_upper_bound(w, fam, node);
        worst.feed(rel_excess(r.lhs, r.rhs));
        ++checks;
      });
    }
    detail = std::to_string(checks) + " node checks over 5 profiles";
    return worst;
  }));

  std::sort(out.begin(), out.end(),
            [](const SuiteResult& a, const SuiteResult& b) { return a.name < b.name; });
  return out;
}

bool all_mandatory_pass(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results)
    if (!r.informational && !r.pass) return false;
  return true;
}

}  // namespace dyw
