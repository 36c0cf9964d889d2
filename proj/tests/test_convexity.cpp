#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyw/convexity.hpp"
#include "dyw/dyadic.hpp"

using dyw::DyadicWeight;
using dyw::FunctionFamily;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("convexity") {

TEST_CASE("family values and curvatures") {
  const FunctionFamily p2 = FunctionFamily::power(2.0);
  CHECK(p2.value(3.0) == 9.0);
  CHECK(p2.second_derivative(5.0) == 2.0);
  CHECK(p2.convex());
  CHECK(p2.curvature_factor() == 2.0);
  CHECK(p2.sum_exponent() == 2.0);

  const FunctionFamily xl = FunctionFamily::xlogx();
  CHECK(xl.value(std::numbers::e) == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(xl.second_derivative(4.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(xl.curvature_factor() == 1.0);
  CHECK(xl.sum_exponent() == 1.0);

  const FunctionFamily np = FunctionFamily::negpower(2.0);
  CHECK(np.value(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(np.second_derivative(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(np.curvature_factor() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(np.sum_exponent() == doctest::Approx(-1.0).epsilon(1e-15));

  const FunctionFamily nl = FunctionFamily::neglog();
  CHECK(nl.value(std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(nl.second_derivative(2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(nl.convex());
  CHECK(nl.sum_exponent() == 0.0);

  CHECK_FALSE(FunctionFamily::poslog().convex());
  CHECK_THROWS_AS(dyw::guaranteed_q(FunctionFamily::poslog()),
                  std::domain_error);
  CHECK_THROWS_AS(FunctionFamily::power(1.0), std::invalid_argument);
  CHECK_THROWS_AS(FunctionFamily::negpower(1.0), std::invalid_argument);
}

TEST_CASE("guaranteed kernel coefficient") {
  CHECK(dyw::guaranteed_q(FunctionFamily::power(2.0)) == 1.0);
  CHECK(dyw::guaranteed_q(FunctionFamily::power(3.0)) == 0.5);
  CHECK(dyw::guaranteed_q(FunctionFamily::xlogx()) == 0.5);
  CHECK(dyw::guaranteed_q(FunctionFamily::neglog()) == 0.5);
}

TEST_CASE("triangular-kernel integral ratio") {
  const std::vector<double> xs = {1.0, 2.0, 5.0};
  const std::vector<double> eps = {0.2, 0.5, 0.9};
  // Constant curvature: the ratio is identically 1.
  CHECK(dyw::integral_q(FunctionFamily::power(2.0), xs, eps) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // Linear curvature also averages back to the centre value exactly.
  CHECK(dyw::integral_q(FunctionFamily::power(3.0), xs, eps) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // Decreasing curvature keeps the one-sided floor of 1/2.  No matching
  // ceiling holds: a convex curvature profile pulls the kernel average
  // above the centre value (Jensen), so the ratio may exceed 1.
  for (const FunctionFamily& fam :
       {FunctionFamily::xlogx(), FunctionFamily::negpower(2.0),
        FunctionFamily::neglog()}) {
    const double q = dyw::integral_q(fam, xs, eps);
    CHECK(q >= 0.5 - 1e-12);
    CHECK(std::isfinite(q));
  }
  CHECK_THROWS_AS(
      dyw::integral_q(FunctionFamily::xlogx(), {1.0}, {1.5}),
      std::invalid_argument);
}

TEST_CASE("midpoint deficit signs on a grid") {
  const std::vector<FunctionFamily> fams = {
      FunctionFamily::power(1.5), FunctionFamily::power(2.0),
      FunctionFamily::power(3.0), FunctionFamily::xlogx(),
      FunctionFamily::negpower(2.0), FunctionFamily::neglog()};
  for (const FunctionFamily& fam : fams) {
    const bool capped = fam.tag == dyw::FamilyTag::negpower ||
                        fam.tag == dyw::FamilyTag::signed_log;
    const double cap = capped ? 16.0 : kInf;
    const double beta = dyw::beta_coefficient(fam, cap);
    const double half_q = dyw::guaranteed_q(fam) / 2.0;
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      for (double v : {0.1, 0.5, 0.9}) {
        const double t = v * x;
        // Lower coefficient: the shifted deficit stays nonpositive.
        CHECK(dyw::midpoint_deficit(fam, x, t, half_q) <= 1e-12);
        // Upper coefficient beta: nonnegative inside the cap.
        CHECK(dyw::midpoint_deficit(fam, x, t, beta) >= -1e-12);
      }
    }
  }
  CHECK_THROWS_AS(
      dyw::midpoint_deficit(FunctionFamily::xlogx(), 1.0, 1.5, 0.5),
      std::invalid_argument);
}

TEST_CASE("beta for the power profiles") {
  // The coefficient comes from a numeric sweep, so allow rounding noise.
  CHECK(std::abs(dyw::beta_coefficient(FunctionFamily::power(2.0)) - 0.5) <=
        1e-12);
  // For these exponents the spread ratio is maximal at adjacent arguments,
  // giving beta = (2^{p-1} - 1) / (p (p-1)); hand-checked for p = 3, 4.
  for (double p : {1.1, 1.5, 3.0, 4.0, 10.0}) {
    const double expect =
        std::max(std::pow(2.0, p - 1.0) - 1.0, p * (p - 1.0) / 2.0) /
        (p * (p - 1.0));
    CHECK(dyw::beta_coefficient(FunctionFamily::power(p)) ==
          doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("beta for the entropy profile is log 2") {
  CHECK(dyw::beta_coefficient(FunctionFamily::xlogx()) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("beta for the capped profiles") {
  // negpower(2) at cap C: beta = (1/2) / (1 - v^2) with v = (C-1)/C,
  // which reduces to C^2 / (2(2C - 1)); at C = 16 this is 128/31.
  CHECK(dyw::beta_coefficient(FunctionFamily::negpower(2.0), 16.0) ==
        doctest::Approx(128.0 / 31.0).epsilon(1e-12));
  // -log x at cap C: beta = -log(1 - v^2) / (2 v^2).
  const double v = 15.0 / 16.0;
  CHECK(dyw::beta_coefficient(FunctionFamily::neglog(), 16.0) ==
        doctest::Approx(-std::log1p(-v * v) / (2 * v * v)).epsilon(1e-12));
  // The cap is mandatory for these families.
  CHECK_THROWS_AS(dyw::beta_coefficient(FunctionFamily::negpower(2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(dyw::beta_coefficient(FunctionFamily::neglog()),
                  std::invalid_argument);
  // Sharpness at the cap: shrinking beta slightly breaks the bound there.
  const double beta = dyw::beta_coefficient(FunctionFamily::neglog(), 16.0);
  CHECK(dyw::midpoint_deficit(FunctionFamily::neglog(), 1.0, v,
                              beta * (1.0 - 1e-6)) < 0.0);
}

TEST_CASE("negpower midpoint ratio and its closed form at p = 2") {
  for (double v : {0.1, 0.5, 0.9, 0.99}) {
    CHECK(dyw::negpower_midpoint_ratio(2.0, v) ==
          doctest::Approx(1.0 / (1.0 - v * v)).epsilon(1e-12));
  }
  const dyw::MonotonicityResult mono = dyw::midpoint_ratio_monotonicity(
      2.0, {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99});
  CHECK(mono.pass);
  CHECK(mono.max_slope < 1e-12);
}

TEST_CASE("beta formula cross-check") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double cap : {2.0, 16.0}) {
      const dyw::BetaFormulaResult r = dyw::beta_formula(p, cap);
      CHECK(r.consistent);
      CHECK(r.beta == doctest::Approx(r.printed).epsilon(1e-8));
      CHECK(r.beta ==
            doctest::Approx(dyw::beta_coefficient(FunctionFamily::negpower(p), cap))
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("alpha search never undercuts the guaranteed coefficient") {
  const std::vector<double> xs = {0.5, 1.0, 2.0};
  const std::vector<double> ts = {0.05, 0.25, 0.45};
  CHECK(dyw::alpha_search(FunctionFamily::power(2.0), xs, ts) ==
        doctest::Approx(0.5).epsilon(1e-13));
  for (const FunctionFamily& fam :
       {FunctionFamily::xlogx(), FunctionFamily::power(3.0),
        FunctionFamily::neglog()}) {
    CHECK(dyw::alpha_search(fam, xs, ts) >=
          dyw::guaranteed_q(fam) / 2.0 - 1e-12);
  }
}

TEST_CASE("square profile: summation equals eight times the gap") {
  const DyadicWeight w({1.0, 3.0});
  const dyw::BoundCheck up =
      dyw::verify_upper_bound(w, FunctionFamily::power(2.0), DyadicWeight::root());
  CHECK(up.pass);
  CHECK(up.lhs == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(up.rhs == doctest::Approx(8.0).epsilon(1e-14));
  const dyw::BoundCheck lo = dyw::verify_lower_bound(
      w, FunctionFamily::power(2.0), DyadicWeight::root(), 0.5);
  CHECK(lo.pass);
  CHECK(lo.lhs == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(lo.rhs == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("square profile identity holds on every node of a deep tree") {
  const DyadicWeight w({1.0, 2.0, 4.0, 8.0, 3.0, 3.0, 9.0, 27.0});
  dyw::for_each_node(w, DyadicWeight::root(), [&](dyw::NodeRef node) {
    const dyw::BoundCheck up =
        dyw::verify_upper_bound(w, FunctionFamily::power(2.0), node);
    // S = 8 gap is an identity for the square profile.
    CHECK(up.lhs == doctest::Approx(up.rhs).epsilon(1e-12));
    CHECK(up.pass);
  });
}

TEST_CASE("capped lower bound skips when the subtree ratios exceed the cap") {
  const DyadicWeight w({1.0, 1.0, 1.0, 7.0});  // doubling constant 4
  const double cap = 2.0;
  const double beta = dyw::beta_coefficient(FunctionFamily::neglog(), cap);
  const dyw::BoundCheck r = dyw::verify_lower_bound(
      w, FunctionFamily::neglog(), DyadicWeight::root(), beta, cap);
  CHECK_FALSE(r.doubling_ok);
  CHECK(r.subtree_doubling == doctest::Approx(4.0).epsilon(1e-13));
  // With the cap at the measured constant the bound applies and holds.
  const double beta4 = dyw::beta_coefficient(FunctionFamily::neglog(), 4.0);
  const dyw::BoundCheck ok = dyw::verify_lower_bound(
      w, FunctionFamily::neglog(), DyadicWeight::root(), beta4, 4.0);
  CHECK(ok.doubling_ok);
  CHECK(ok.pass);
}

TEST_CASE("coefficient report bundles the pieces") {
  const dyw::CoefficientReport r =
      dyw::coefficient_report(FunctionFamily::power(2.0));
  CHECK(r.q == 1.0);
  CHECK(r.alpha == 0.5);
  CHECK(std::abs(r.beta - 0.5) <= 1e-12);
  CHECK(std::isinf(r.cap));
  const dyw::CoefficientReport c =
      dyw::coefficient_report(FunctionFamily::neglog(), 16.0);
  CHECK(c.q == 0.5);
  CHECK(c.cap == 16.0);
  CHECK(c.beta == doctest::Approx(dyw::beta_coefficient(
                      FunctionFamily::neglog(), 16.0)).epsilon(1e-14));
}

}  // TEST_SUITE
