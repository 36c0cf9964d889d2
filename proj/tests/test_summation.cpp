#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dyw/constants.hpp"
#include "dyw/dyadic.hpp"
#include "dyw/generate.hpp"
#include "dyw/summation.hpp"

using dyw::BuckleyKind;
using dyw::DyadicWeight;
using dyw::FunctionFamily;

TEST_SUITE("summation") {

TEST_CASE("square-difference sums on the two-leaf tree") {
  const DyadicWeight w({1.0, 3.0});
  // Root average 2, delta -2: (delta/avg)^2 = 1, so s = 0 gives 1 and
  // s = 1 gives <w> = 2.
  CHECK(dyw::buckley_sum(w, DyadicWeight::root(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dyw::buckley_sum(w, DyadicWeight::root(), 1.0) ==
        doctest::Approx(2.0).epsilon(1e-15));
  // Leaves have no internal nodes: the sum is empty.
  CHECK(dyw::buckley_sum(w, {1, 0}, 2.0) == 0.0);
}

TEST_CASE("normalized constants on the two-leaf tree") {
  const DyadicWeight w({1.0, 3.0});
  CHECK(dyw::buckley_constant(w, BuckleyKind::rhp(2.0)).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dyw::buckley_constant(w, BuckleyKind::ap(2.0)).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dyw::buckley_constant(w, BuckleyKind::ainf()).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  // Children are constant, so every non-root square difference vanishes.
  CHECK(dyw::buckley_constant(w, BuckleyKind::weak_rhp(2.0)).value == 0.0);
  // Cross-check against the classical constant: for this tree the p = 2
  // summation constant equals 4 (RH_2^2 - 1) exactly.
  const double rh2 =
      dyw::weight_constant(w, dyw::ConstantKind::rhp(2.0)).value;
  CHECK(dyw::buckley_constant(w, BuckleyKind::rhp(2.0)).value ==
        doctest::Approx(4.0 * (rh2 * rh2 - 1.0)).epsilon(1e-13));
}

TEST_CASE("weak constant on a depth-two tree") {
  const DyadicWeight w({1.0, 3.0, 5.0, 7.0});
  const dyw::BuckleyResult r = dyw::buckley_constant(w, BuckleyKind::weak_rhp(1.0));
  // Left child {1,3}: delta -2, avg 2 -> sum(J, 1) = 2; parent avg 4 -> 1/2.
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.argmax.level == 1);
  CHECK(r.argmax.index == 0);
}

TEST_CASE("representation check for the square profile") {
  const DyadicWeight w({1.0, 3.0});
  const dyw::RepresentationCheck r =
      dyw::representation_check(w, FunctionFamily::power(2.0), DyadicWeight::root());
  CHECK(r.sum == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.sum_curvature == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(r.gap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.ratio == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.bound_upper == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.bound_lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.pass_upper);
  CHECK(r.pass_lower);
  CHECK_FALSE(r.doubling_exempt);
  CHECK(std::isinf(r.cap));
}

TEST_CASE("representation check for the entropy profile") {
  const DyadicWeight w({1.0, 3.0});
  const dyw::RepresentationCheck r =
      dyw::representation_check(w, FunctionFamily::xlogx(), DyadicWeight::root());
  const double gap =
      dyw::entropy_gap(w, DyadicWeight::root());
  CHECK(r.sum == doctest::Approx(2.0).epsilon(1e-14));  // k = 1, s = 1
  CHECK(r.sum_curvature == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.gap == doctest::Approx(gap).epsilon(1e-14));
  CHECK(r.bound_upper == doctest::Approx(16.0 * gap).epsilon(1e-13));
  CHECK(r.bound_lower ==
        doctest::Approx(gap / std::log(2.0)).epsilon(1e-13));
  CHECK(r.pass_upper);
  CHECK(r.pass_lower);
}

TEST_CASE("capped profile goes exempt when ratios exceed the cap") {
  const DyadicWeight w({1.0, 3.0});  // parent/child ratios reach 2
  const dyw::RepresentationCheck tight = dyw::representation_check(
      w, FunctionFamily::neglog(), DyadicWeight::root(), 1.5);
  CHECK(tight.doubling_exempt);
  CHECK(tight.pass_lower);  // vacuous
  CHECK(tight.bound_lower == 0.0);
  CHECK(tight.pass_upper);
  // Default: the cap adapts to the measured subtree ratios and applies.
  const dyw::RepresentationCheck open = dyw::representation_check(
      w, FunctionFamily::neglog(), DyadicWeight::root());
  CHECK_FALSE(open.doubling_exempt);
  CHECK(open.cap == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(open.pass_lower);
  CHECK(open.pass_upper);
}

TEST_CASE("comparability report on the two-leaf tree") {
  const DyadicWeight w({1.0, 3.0});
  const dyw::ComparabilityReport rep = dyw::comparability_report(w, 2.0);
  CHECK(rep.all_ok);
  CHECK(rep.p == 2.0);
  CHECK(rep.doubling == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.checks.size() == 12);
  for (const dyw::InequalityCheck& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.ok);
    CHECK(c.lhs <= c.rhs + 1e-12 * std::max(1.0, std::abs(c.rhs)));
  }
}

TEST_CASE("comparability report on a random cascade") {
  dyw::GeneratorSpec spec;
  spec.kind = dyw::GeneratorSpec::Kind::cascade;
  spec.depth = 6;
  spec.eps_max = 0.6;
  spec.seed = 17;
  const DyadicWeight w = dyw::generate(spec);
  for (double p : {1.5, 2.0, 3.0}) {
    const dyw::ComparabilityReport rep = dyw::comparability_report(w, p);
    CAPTURE(p);
    CHECK(rep.all_ok);
  }
}

TEST_CASE("kind validation and names") {
  CHECK_THROWS_AS(BuckleyKind::ap(1.0), std::invalid_argument);
  CHECK_THROWS_AS(BuckleyKind::rhp(0.5), std::invalid_argument);
  CHECK_NOTHROW(BuckleyKind::rhp(1.0));
  CHECK(dyw::buckley_name(BuckleyKind::rhp(2.0)) == "RHpSum");
  CHECK(dyw::buckley_name(BuckleyKind::ap(2.0)) == "ApSum");
  CHECK(dyw::buckley_name(BuckleyKind::ainf()) == "AinfSum");
  CHECK(dyw::buckley_name(BuckleyKind::weak_rhp(2.0)) == "WeakRHpSum");
  // Weak constants need at least one non-root node.
  const DyadicWeight flat({5.0});
  CHECK_THROWS_AS(dyw::buckley_constant(flat, BuckleyKind::weak_rhp(2.0)),
                  std::invalid_argument);
}

}  // TEST_SUITE
