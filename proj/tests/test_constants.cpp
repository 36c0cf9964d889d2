#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyw/constants.hpp"
#include "dyw/dyadic.hpp"

using dyw::ConstantKind;
using dyw::DyadicWeight;
using dyw::NodeRef;
using dyw::weight_constant;

namespace {

// Independent Luxemburg-norm oracle: plain 400-step bisection on the
// averaged modular, written without reference to the library routine.
double lux_oracle(const std::vector<double>& values, double lo, double hi) {
  const auto modular = [&](double lambda) {
    double acc = 0.0;
    for (double v : values) {
      const double t = v / lambda;
      acc += t * std::log(std::numbers::e + t);
    }
    return acc / static_cast<double>(values.size());
  };
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("constants") {

TEST_CASE("two-leaf fixture: frozen closed forms") {
  const DyadicWeight w({1.0, 3.0});
  CHECK(weight_constant(w, ConstantKind::ap(2.0)).value ==
        doctest::Approx(4.0 / 3).epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::ainf()).value ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::rhp(2.0)).value ==
        doctest::Approx(std::sqrt(5.0) / 2).epsilon(1e-14));
  const double rh1_expected =
      (0.5 * std::log(0.5) + 1.5 * std::log(1.5)) / 2.0;
  CHECK(weight_constant(w, ConstantKind::rh1()).value ==
        doctest::Approx(rh1_expected).epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::rh1_via_maximal()).value ==
        doctest::Approx(1.25).epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::weak_rhp(2.0)).value ==
        doctest::Approx(1.5).epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::weak_rh1()).value == 0.0);
}

TEST_CASE("argmax bookkeeping") {
  const DyadicWeight w({1.0, 2.0, 4.0, 8.0});
  const auto r = weight_constant(w, ConstantKind::rh1_via_maximal());
  CHECK(r.value == doctest::Approx(5.375 / 3.75).epsilon(1e-14));
  CHECK(r.argmax == DyadicWeight::root());
  // Weak constants never report the root.
  const auto weak = weight_constant(w, ConstantKind::weak_rh1());
  CHECK(weak.argmax.level >= 1);
  const double right_gap =
      ((4 * std::log(4.0) + 8 * std::log(8.0)) / 2 - 6 * std::log(6.0)) / 3.75;
  CHECK(weak.value == doctest::Approx(right_gap).epsilon(1e-13));
}

TEST_CASE("entropy gap matches the normalized integrand") {
  const DyadicWeight w({1.0, 3.0});
  const double gap = dyw::entropy_gap(w, DyadicWeight::root());
  CHECK(gap == doctest::Approx(1.5 * std::log(3.0) - 2 * std::log(2.0))
                   .epsilon(1e-14));
  CHECK(weight_constant(w, ConstantKind::rh1()).value ==
        doctest::Approx(gap / 2.0).epsilon(1e-13));
}

TEST_CASE("luxemburg norm with the identity profile returns the average") {
  const DyadicWeight w({1.0, 2.0, 4.0, 8.0});
  const double lam = dyw::luxemburg_norm(w, DyadicWeight::root(),
                                         [](double t) { return t; });
  CHECK(lam == doctest::Approx(3.75).epsilon(1e-11));
}

TEST_CASE("luxemburg norm against an independent bisection") {
  const DyadicWeight w({1.0, 3.0});
  const double lib = dyw::luxemburg_norm(
      w, DyadicWeight::root(),
      [](double t) { return t * std::log(std::numbers::e + t); });
  const double ora = lux_oracle({1.0, 3.0}, 1e-6, 1e6);
  CHECK(lib == doctest::Approx(ora).epsilon(1e-10));
  // Homogeneity: ||c w|| = c ||w||.
  const DyadicWeight cw({2.5, 7.5});
  const double lib_scaled = dyw::luxemburg_norm(
      cw, DyadicWeight::root(),
      [](double t) { return t * std::log(std::numbers::e + t); });
  CHECK(lib_scaled == doctest::Approx(2.5 * lib).epsilon(1e-10));
}

TEST_CASE("stein average spot value") {
  const DyadicWeight w({1.0, 3.0});
  const double expect = (1.0 * std::log(std::numbers::e + 0.5) +
                         3.0 * std::log(std::numbers::e + 1.5)) /
                        2.0;
  CHECK(dyw::stein_average(w, DyadicWeight::root()) ==
        doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("limit probe: frozen value, limit, and monotonicity") {
  const DyadicWeight w({1.0, 3.0});
  // p = 2: (p/(p-1)) (log <w^2>^{1/2} - log <w>) = log(5) - log(4).
  CHECK(dyw::rh1_limit_probe(w, 2.0) ==
        doctest::Approx(std::log(1.25)).epsilon(1e-13));
  const double target = dyw::entropy_gap(w, DyadicWeight::root()) / 2.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double p : {1.1, 1.01, 1.001, 1.0001}) {
    const double probe = dyw::rh1_limit_probe(w, p);
    CHECK(probe <= prev + 1e-12);
    CHECK(probe >= target - 1e-9);
    prev = probe;
  }
  CHECK(prev == doctest::Approx(target).epsilon(0.01));
  CHECK_THROWS_AS(dyw::rh1_limit_probe(w, 1.0), std::invalid_argument);
}

TEST_CASE("scale invariance of the constants") {
  const DyadicWeight w({1.0, 2.0, 4.0, 8.0});
  const DyadicWeight s({3.5, 7.0, 14.0, 28.0});
  const std::vector<ConstantKind> kinds = {
      ConstantKind::ap(2.0),        ConstantKind::ainf(),
      ConstantKind::rhp(2.0),       ConstantKind::rh1(),
      ConstantKind::rh1_via_maximal(), ConstantKind::rh1_via_luxemburg(),
      ConstantKind::weak_rhp(2.0),  ConstantKind::weak_rh1(),
      ConstantKind::weak_rh1_via_luxemburg()};
  for (const ConstantKind& kind : kinds) {
    CHECK(weight_constant(w, kind).value ==
          doctest::Approx(weight_constant(s, kind).value).epsilon(1e-10));
  }
}

TEST_CASE("kind names round-trip") {
  const std::vector<ConstantKind> kinds = {
      ConstantKind::ap(3.0),        ConstantKind::ainf(),
      ConstantKind::rhp(3.0),       ConstantKind::rh1(),
      ConstantKind::rh1_via_maximal(), ConstantKind::rh1_via_luxemburg(),
      ConstantKind::weak_rhp(3.0),  ConstantKind::weak_rh1(),
      ConstantKind::weak_rh1_via_luxemburg()};
  for (const ConstantKind& kind : kinds) {
    const ConstantKind back = dyw::parse_kind(dyw::kind_name(kind), kind.p);
    CHECK(back.tag == kind.tag);
    CHECK(back.p == kind.p);
  }
  CHECK_THROWS_AS(dyw::parse_kind("NoSuchConstant", 2.0),
                  std::invalid_argument);
}

TEST_CASE("domain errors") {
  const DyadicWeight w({1.0, 3.0});
  CHECK_THROWS_AS(ConstantKind::ap(1.0), std::invalid_argument);
  CHECK_THROWS_AS(ConstantKind::rhp(0.5), std::invalid_argument);
  const DyadicWeight flat({2.0});
  CHECK_THROWS_AS(weight_constant(flat, ConstantKind::weak_rh1()),
                  std::invalid_argument);
  // A huge leaf overflows <w^p> and must be reported, not returned as inf.
  const DyadicWeight huge({1.0, 1e200});
  CHECK_THROWS_AS(weight_constant(huge, ConstantKind::rhp(2.0)),
                  std::domain_error);
}

TEST_CASE("weak constants normalize by the parent average") {
  // Depth-2: right child [4,8] has RH2 ratio sqrt(40)/6 locally, but the
  // weak constant divides by the root average 15/4 instead.
  const DyadicWeight w({1.0, 2.0, 4.0, 8.0});
  const double wrh2 = weight_constant(w, ConstantKind::weak_rhp(2.0)).value;
  double best = 0.0;
  // Independent recomputation over non-root nodes.
  for (int level = 1; level <= 2; ++level) {
    for (std::int64_t k = 0; k < (1 << level); ++k) {
      const NodeRef node{level, k};
      const NodeRef up = DyadicWeight::parent(node);
      const double num = std::sqrt(dyw::leaf_average(
          w, node, [](double v) { return v * v; }));
      best = std::max(best, num / w.average(up));
    }
  }
  CHECK(wrh2 == doctest::Approx(best).epsilon(1e-13));
}

}  // TEST_SUITE
