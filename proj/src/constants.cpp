#include "dyw/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dyw {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(std::string("dyw: ") + msg);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string("dyw: ") + what +
                            " overflowed; constant not representable");
}

// Scans all nodes (optionally skipping the root), keeping the largest value.
template <class F>
ConstantResult scan_nodes(const DyadicWeight& w, bool skip_root, F&& value_at) {
  ConstantResult best{-std::numeric_limits<double>::infinity(), DyadicWeight::root()};
  for_each_node(w, DyadicWeight::root(), [&](NodeRef n) {
    if (skip_root && n.level == 0) return;
    const double v = value_at(n);
    check_finite(v, "node functional");
    if (v > best.value) best = {v, n};
  });
  if (!std::isfinite(best.value))
    throw std::invalid_argument(
        "dyw: constant needs at least one admissible node (depth >= 1)");
  return best;
}

}  // namespace

ConstantKind ConstantKind::ap(double p) {
  require(std::isfinite(p) && p > 1.0, "Ap needs p > 1");
  return {ConstantTag::ap, p};
}

ConstantKind ConstantKind::rhp(double p) {
  require(std::isfinite(p) && p > 1.0, "RHp needs p > 1");
  return {ConstantTag::rhp, p};
}

ConstantKind ConstantKind::weak_rhp(double p) {
  require(std::isfinite(p) && p > 1.0, "WeakRHp needs p > 1");
  return {ConstantTag::weak_rhp, p};
}

std::string kind_name(const ConstantKind& kind) {
  switch (kind.tag) {
    case ConstantTag::ap: return "Ap";
    case ConstantTag::ainf: return "Ainf";
    case ConstantTag::rhp: return "RHp";
    case ConstantTag::rh1: return "RH1";
    case ConstantTag::rh1_via_maximal: return "RH1ViaMaximal";
    case ConstantTag::rh1_via_luxemburg: return "RH1ViaLuxemburg";
    case ConstantTag::weak_rhp: return "WeakRHp";
    case ConstantTag::weak_rh1: return "WeakRH1";
    case ConstantTag::weak_rh1_via_luxemburg: return "WeakRH1ViaLuxemburg";
  }
  throw std::logic_error("dyw: unreachable");
}

ConstantKind parse_kind(const std::string& name, double p) {
  if (name == "Ap") return ConstantKind::ap(p);
  if (name == "Ainf") return ConstantKind::ainf();
  if (name == "RHp") return ConstantKind::rhp(p);
  if (name == "RH1") return ConstantKind::rh1();
  if (name == "RH1ViaMaximal") return ConstantKind::rh1_via_maximal();
  if (name == "RH1ViaLuxemburg") return ConstantKind::rh1_via_luxemburg();
  if (name == "WeakRHp") return ConstantKind::weak_rhp(p);
  if (name == "WeakRH1") return ConstantKind::weak_rh1();
  if (name == "WeakRH1ViaLuxemburg") return ConstantKind::weak_rh1_via_luxemburg();
  throw std::invalid_argument("dyw: unknown constant kind '" + name + "'");
}

double entropy_gap(const DyadicWeight& w, NodeRef node) {
  const double c = w.average(node);
  const double wlogw = leaf_average(w, node, [](double v) { return v * std::log(v); });
  return wlogw - c * std::log(c);
}

double stein_average(const DyadicWeight& w, NodeRef node) {
  const double c = w.average(node);
  return leaf_average(w, node, [&](double v) {
    return v * std::log(std::numbers::e + v / c);
  });
}

double luxemburg_norm(const DyadicWeight& w, NodeRef node,
                      const std::function<double(double)>& phi) {
  auto modular = [&](double lambda) {
    return leaf_average(w, node, [&](double v) { return phi(v / lambda); }) - 1.0;
  };
  double lo = w.average(node), hi = lo;
  // h(lambda) = modular - 1 is nonincreasing; expand until it straddles 0.
  int guard = 0;
  while (modular(lo) <= 0.0) {
    lo *= 0.5;
    if (++guard > 200 || lo == 0.0) {
      // phi never pushes the modular above 1: the norm is 0 in the limit,
      // which only happens for degenerate phi; report the bracket.
      throw std::runtime_error("dyw: luxemburg bracketing failed below, lo=" +
                               std::to_string(lo));
    }
  }
  guard = 0;
  while (modular(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 200 || !std::isfinite(hi))
      throw std::runtime_error("dyw: luxemburg bracketing failed above, hi=" +
                               std::to_string(hi));
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

const std::function<double(double)>& llogl_phi() {
  static const std::function<double(double)> phi = [](double t) {
    return t * std::log(std::numbers::e + t);
  };
  return phi;
}

}  // namespace

ConstantResult weight_constant(const DyadicWeight& w, ConstantKind kind) {
  switch (kind.tag) {
    case ConstantTag::ap: {
      const double mexp = -1.0 / (kind.p - 1.0);
      const auto sigma = profile_averages(w, [&](double v) { return std::pow(v, mexp); });
      return scan_nodes(w, false, [&](NodeRef n) {
        const double s = sigma[static_cast<std::size_t>(w.node_id(n))];
        check_finite(s, "dual power average");
        return w.average(n) * std::pow(s, kind.p - 1.0);
      });
    }
    case ConstantTag::ainf: {
      const auto lg = profile_averages(w, [](double v) { return std::log(v); });
      return scan_nodes(w, false, [&](NodeRef n) {
        return w.average(n) *
               std::exp(-lg[static_cast<std::size_t>(w.node_id(n))]);
      });
    }
    case ConstantTag::rhp: {
      const auto pw = profile_averages(w, [&](double v) { return std::pow(v, kind.p); });
      return scan_nodes(w, false, [&](NodeRef n) {
        const double m = pw[static_cast<std::size_t>(w.node_id(n))];
        check_finite(m, "power average");
        return std::pow(m, 1.0 / kind.p) / w.average(n);
      });
    }
    case ConstantTag::rh1: {
      const auto ent = profile_averages(w, [](double v) { return v * std::log(v); });
      return scan_nodes(w, false, [&](NodeRef n) {
        const double c = w.average(n);
        const double gap = ent[static_cast<std::size_t>(w.node_id(n))] - c * std::log(c);
        return gap / c;
      });
    }
    case ConstantTag::rh1_via_maximal: {
      return scan_nodes(w, false, [&](NodeRef n) {
        return maximal_average(w, n) / w.average(n);
      });
    }
    case ConstantTag::rh1_via_luxemburg: {
      return scan_nodes(w, false, [&](NodeRef n) {
        return luxemburg_norm(w, n, llogl_phi()) / w.average(n);
      });
    }
    case ConstantTag::weak_rhp: {
      const auto pw = profile_averages(w, [&](double v) { return std::pow(v, kind.p); });
      return scan_nodes(w, true, [&](NodeRef n) {
        const double m = pw[static_cast<std::size_t>(w.node_id(n))];
        check_finite(m, "power average");
        return std::pow(m, 1.0 / kind.p) / w.average(DyadicWeight::parent(n));
      });
    }
    case ConstantTag::weak_rh1: {
      const auto ent = profile_averages(w, [](double v) { return v * std::log(v); });
      return scan_nodes(w, true, [&](NodeRef n) {
        const double c = w.average(n);
        const double gap = ent[static_cast<std::size_t>(w.node_id(n))] - c * std::log(c);
        return gap / w.average(DyadicWeight::parent(n));
      });
    }
    case ConstantTag::weak_rh1_via_luxemburg: {
      return scan_nodes(w, true, [&](NodeRef n) {
        return luxemburg_norm(w, n, llogl_phi()) /
               w.average(DyadicWeight::parent(n));
      });
    }
  }
  throw std::logic_error("dyw: unreachable");
}

double rh1_limit_probe(const DyadicWeight& w, double p) {
  require(std::isfinite(p) && p > 1.0, "rh1_limit_probe needs p > 1");
  const double mean_p = leaf_average(w, DyadicWeight::root(),
                                     [&](double v) { return std::pow(v, p); });
  check_finite(mean_p, "power average");
  const double lhs = std::log(mean_p) / p - std::log(w.average(DyadicWeight::root()));
  return p / (p - 1.0) * lhs;
}

}  // namespace dyw
