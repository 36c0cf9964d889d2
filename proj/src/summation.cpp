#include "dyw/summation.hpp"

#include "dyw/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dyw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(std::string("dyw: ") + msg);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string("dyw: ") + what + " overflowed");
}

template <class F>
BuckleyResult scan_buckley(const DyadicWeight& w, bool skip_root, F&& value_at) {
  BuckleyResult best{-kInf, DyadicWeight::root()};
  for_each_node(w, DyadicWeight::root(), [&](NodeRef n) {
    if (skip_root && n.level == 0) return;
    const double v = value_at(n);
    check_finite(v, "summation functional");
    if (v > best.value) best = {v, n};
  });
  if (!std::isfinite(best.value))
    throw std::invalid_argument(
        "dyw: constant needs at least one admissible node (depth >= 1)");
  return best;
}

double subtree_doubling(const DyadicWeight& w, NodeRef top) {
  double d = 1.0;
  for_each_node(w, top, [&](NodeRef n) {
    if (n.level >= w.depth()) return;
    const double a = w.average(n);
    d = std::max(d, a / w.average(DyadicWeight::left(n)));
    d = std::max(d, a / w.average(DyadicWeight::right(n)));
  });
  return d;
}

}  // namespace

BuckleyKind BuckleyKind::rhp(double p) {
  require(std::isfinite(p) && p >= 1.0, "summation RHp needs p >= 1");
  return {BuckleyTag::rhp, p};
}

BuckleyKind BuckleyKind::ap(double p) {
  require(std::isfinite(p) && p > 1.0, "summation Ap needs p > 1");
  return {BuckleyTag::ap, p};
}

BuckleyKind BuckleyKind::weak_rhp(double p) {
  require(std::isfinite(p) && p >= 1.0, "summation WeakRHp needs p >= 1");
  return {BuckleyTag::weak_rhp, p};
}

std::string buckley_name(const BuckleyKind& kind) {
  switch (kind.tag) {
    case BuckleyTag::rhp: return "RHpSum";
    case BuckleyTag::ap: return "ApSum";
    case BuckleyTag::ainf: return "AinfSum";
    case BuckleyTag::weak_rhp: return "WeakRHpSum";
  }
  throw std::logic_error("dyw: unreachable");
}

double buckley_sum(const DyadicWeight& w, NodeRef node, double s) {
  require(std::isfinite(s), "buckley_sum needs finite s");
  double acc = 0.0;
  for_each_node(w, node, [&](NodeRef n) {
    if (n.level >= w.depth()) return;
    const double rel_len =
        1.0 / static_cast<double>(std::int64_t{1} << (n.level - node.level));
    const double a = w.average(n);
    const double rel = average_delta(w, n) / a;
    acc += rel * rel * std::pow(a, s) * rel_len;
  });
  check_finite(acc, "buckley sum");
  return acc;
}

BuckleyResult buckley_constant(const DyadicWeight& w, BuckleyKind kind) {
  switch (kind.tag) {
    case BuckleyTag::rhp:
      return scan_buckley(w, false, [&](NodeRef n) {
        return buckley_sum(w, n, kind.p) / std::pow(w.average(n), kind.p);
      });
    case BuckleyTag::ap: {
      const double s = -1.0 / (kind.p - 1.0);
      return scan_buckley(w, false, [&](NodeRef n) {
        return buckley_sum(w, n, s) / std::pow(w.average(n), s);
      });
    }
    case BuckleyTag::ainf:
      return scan_buckley(w, false,
                          [&](NodeRef n) { return buckley_sum(w, n, 0.0); });
    case BuckleyTag::weak_rhp:
      return scan_buckley(w, true, [&](NodeRef n) {
        return buckley_sum(w, n, kind.p) /
               std::pow(w.average(DyadicWeight::parent(n)), kind.p);
      });
  }
  throw std::logic_error("dyw: unreachable");
}

RepresentationCheck representation_check(const DyadicWeight& w,
                                         const FunctionFamily& fam, NodeRef node,
                                         double cap) {
  const double k = fam.curvature_factor();
  const double s = fam.sum_exponent();
  const double q = guaranteed_q(fam);
  RepresentationCheck out;
  out.sum = buckley_sum(w, node, s);
  double curv = 0.0;
  for_each_node(w, node, [&](NodeRef n) {
    if (n.level >= w.depth()) return;
    const double rel_len =
        1.0 / static_cast<double>(std::int64_t{1} << (n.level - node.level));
    const double d = average_delta(w, n);
    curv += d * d * fam.second_derivative(w.average(n)) * rel_len;
  });
  out.sum_curvature = curv;
  out.gap = leaf_average(w, node, [&](double v) { return fam.value(v); }) -
            fam.value(w.average(node));
  out.ratio = out.gap == 0.0 ? 0.0 : out.sum / out.gap;
  out.bound_upper = (8.0 / q) / k * out.gap;
  out.pass_upper =
      out.sum <= out.bound_upper + 1e-10 * std::max(1.0, std::abs(out.bound_upper));
  const bool capped =
      fam.tag == FamilyTag::negpower || fam.tag == FamilyTag::signed_log;
  double cap_used = cap;
  if (capped && !std::isfinite(cap)) cap_used = std::max(subtree_doubling(w, node), 1.0 + 1e-9);
  out.cap = capped ? cap_used : kInf;
  if (capped && std::isfinite(cap) &&
      subtree_doubling(w, node) > cap * (1.0 + 1e-12)) {
    out.doubling_exempt = true;
    out.bound_lower = 0.0;
    out.pass_lower = true;
    return out;
  }
  const double beta = beta_coefficient(fam, capped ? cap_used : kInf);
  out.bound_lower = out.gap / (beta * k);
  out.pass_lower =
      out.sum >= out.bound_lower - 1e-10 * std::max(1.0, std::abs(out.bound_lower));
  return out;
}

ComparabilityReport comparability_report(const DyadicWeight& w, double p) {
  require(std::isfinite(p) && p > 1.0, "comparability_report needs p > 1");
  ComparabilityReport rep;
  rep.p = p;
  rep.doubling = doubling_constant(w);
  const double d_eff = std::max(rep.doubling, 1.0 + 1e-9);

  const double k_pow = p * (p - 1.0);
  const double q_pow = p == 2.0 ? 1.0 : 0.5;
  const double big_c_pow = (8.0 / q_pow) / k_pow;
  const double beta_pow = beta_coefficient(FunctionFamily::power(p));
  const double c_pow = 1.0 / (beta_pow * k_pow);
  const double k_np = p / ((p - 1.0) * (p - 1.0));
  const double big_c_np = 16.0 / k_np;
  const double beta_np = beta_coefficient(FunctionFamily::negpower(p), d_eff);
  const double beta_log = beta_coefficient(FunctionFamily::neglog(), d_eff);

  auto push = [&](std::string name, double lhs, double rhs, bool dbl, double cap) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.ok = lhs <= rhs + 1e-10 * std::max(1.0, std::abs(rhs));
    c.doubling_dependent = dbl;
    c.cap = cap;
    rep.checks.push_back(std::move(c));
  };

  const double rhp_c = weight_constant(w, ConstantKind::rhp(p)).value;
  const double rhp_b = buckley_constant(w, BuckleyKind::rhp(p)).value;
  const double rhp_l = std::pow(rhp_c, p) - 1.0;
  push("rhp_buckley_upper", rhp_b, big_c_pow * rhp_l, false, kInf);
  push("rhp_buckley_lower", c_pow * rhp_l, rhp_b, false, kInf);

  const double rh1_c = weight_constant(w, ConstantKind::rh1()).value;
  const double rh1_b = buckley_constant(w, BuckleyKind::rhp(1.0)).value;
  push("rh1_buckley_upper", rh1_b, 16.0 * rh1_c, false, kInf);
  push("rh1_buckley_lower", rh1_c / std::numbers::ln2, rh1_b, false, kInf);

  const double ap_c = weight_constant(w, ConstantKind::ap(p)).value;
  const double ap_b = buckley_constant(w, BuckleyKind::ap(p)).value;
  const double ap_l = std::pow(ap_c, 1.0 / (p - 1.0)) - 1.0;
  push("ap_buckley_upper", ap_b, big_c_np * ap_l, false, kInf);
  push("ap_classical_from_buckley", ap_l, beta_np * k_np * ap_b, true, d_eff);

  const double ainf_c = weight_constant(w, ConstantKind::ainf()).value;
  const double ainf_b = buckley_constant(w, BuckleyKind::ainf()).value;
  push("ainf_buckley_upper", ainf_b, 16.0 * std::log(ainf_c), false, kInf);
  push("ainf_classical_from_buckley", std::log(ainf_c), beta_log * ainf_b, true,
       d_eff);

  if (w.depth() >= 1) {
    const double wrhp_c = weight_constant(w, ConstantKind::weak_rhp(p)).value;
    const double wrhp_b = buckley_constant(w, BuckleyKind::weak_rhp(p)).value;
    push("weak_rhp_buckley_upper", wrhp_b, big_c_pow * std::pow(wrhp_c, p), false,
         kInf);
    push("weak_rhp_classical_from_buckley", wrhp_c,
         std::pow(beta_pow * k_pow * wrhp_b + std::pow(2.0, p), 1.0 / p), false,
         kInf);

    const double wrh1_c = weight_constant(w, ConstantKind::weak_rh1()).value;
    const double wrh1_b = buckley_constant(w, BuckleyKind::weak_rhp(1.0)).value;
    push("weak_rh1_buckley_upper", wrh1_b, 16.0 * wrh1_c, false, kInf);
    push("weak_rh1_classical_from_buckley", wrh1_c, std::numbers::ln2 * wrh1_b,
         false, kInf);
  }

  rep.all_ok = true;
  for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
  return rep;
}

}  // namespace dyw
