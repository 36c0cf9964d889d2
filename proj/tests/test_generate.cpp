#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dyw/bellman.hpp"
#include "dyw/constants.hpp"
#include "dyw/dyadic.hpp"
#include "dyw/generate.hpp"

using dyw::DyadicWeight;
using dyw::GeneratorSpec;

namespace {

GeneratorSpec make(GeneratorSpec::Kind kind, int depth) {
  GeneratorSpec s;
  s.kind = kind;
  s.depth = depth;
  return s;
}

double max_bracket(const DyadicWeight& w) {
  double worst = 0.0;
  dyw::for_each_node(w, DyadicWeight::root(), [&](dyw::NodeRef n) {
    const double avg = w.average(n);
    const double lavg =
        dyw::leaf_average(w, n, [](double v) { return std::log(v); });
    worst = std::max(worst, avg * std::exp(-lavg));
  });
  return worst;
}

}  // namespace

TEST_SUITE("generate") {

TEST_CASE("constant and two-value generators") {
  GeneratorSpec c = make(GeneratorSpec::Kind::constant, 3);
  c.a = 2.5;
  const DyadicWeight wc = dyw::generate(c);
  CHECK(wc.depth() == 3);
  for (double v : wc.leaves()) CHECK(v == 2.5);

  GeneratorSpec tv = make(GeneratorSpec::Kind::two_value, 1);
  tv.a = 1.0;
  tv.b = 9.0;
  const DyadicWeight wt = dyw::generate(tv);
  CHECK(wt.depth() == 1);
  CHECK(wt.leaves() == std::vector<double>{1.0, 9.0});
  tv.b = -1.0;
  CHECK_THROWS_AS(dyw::generate(tv), std::invalid_argument);
}

TEST_CASE("power-profile cell averages") {
  GeneratorSpec s = make(GeneratorSpec::Kind::power_like, 6);
  for (double e : {-0.9, -0.5, 0.0, 0.5, 2.0}) {
    s.exponent = e;
    const DyadicWeight w = dyw::generate(s);
    CAPTURE(e);
    // Root average is the full integral of x^e on [0,1].
    CHECK(w.average(DyadicWeight::root()) ==
          doctest::Approx(1.0 / (e + 1.0)).epsilon(1e-12));
    // Monotone leaves in the direction dictated by the exponent's sign.
    const std::vector<double>& lv = w.leaves();
    for (std::size_t i = 1; i < lv.size(); ++i) {
      if (e < 0.0) CHECK(lv[i - 1] >= lv[i]);
      if (e > 0.0) CHECK(lv[i - 1] <= lv[i]);
      if (e == 0.0) CHECK(lv[i] == 1.0);
    }
  }
  s.exponent = -1.0;
  CHECK_THROWS_AS(dyw::generate(s), std::invalid_argument);
}

TEST_CASE("random cascades are deterministic and mean-preserving") {
  GeneratorSpec s = make(GeneratorSpec::Kind::cascade, 7);
  s.eps_max = 0.6;
  s.seed = 123;
  const DyadicWeight a = dyw::generate(s);
  const DyadicWeight b = dyw::generate(s);
  CHECK(a.leaves() == b.leaves());
  s.seed = 124;
  const DyadicWeight c = dyw::generate(s);
  CHECK(a.leaves() != c.leaves());

  CHECK(a.average(DyadicWeight::root()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Every parent/child step stays within the multiplier band.
  dyw::for_each_node(a, DyadicWeight::root(), [&](dyw::NodeRef n) {
    if (n.level >= a.depth()) return;
    const double p = a.average(n);
    const double l = a.average(DyadicWeight::left(n));
    CHECK(std::abs(l / p - 1.0) <= s.eps_max + 1e-12);
  });

  s.eps_max = 1.0;
  CHECK_THROWS_AS(dyw::generate(s), std::invalid_argument);
}

TEST_CASE("stretched-ratio generator hits its doubling target") {
  for (int depth : {3, 6, 10}) {
    for (double bound : {2.0, 8.0, 32.0}) {
      GeneratorSpec s = make(GeneratorSpec::Kind::nondoubling, depth);
      s.bound = bound;
      const DyadicWeight w = dyw::generate(s);
      CAPTURE(depth);
      CAPTURE(bound);
      const double d = dyw::doubling_constant(w);
      CHECK(d >= bound);
      CHECK(d < bound + 1.0);
      // The square-mean ratio stays tame even as doubling blows up.
      CHECK(dyw::weight_constant(w, dyw::ConstantKind::rhp(2.0)).value <= 2.0);
      // Right half is flat at the top value, left edge decays geometrically.
      const std::vector<double>& lv = w.leaves();
      const std::size_t n = lv.size();
      for (std::size_t i = n / 2; i < n; ++i) CHECK(lv[i] == lv[n - 1]);
      CHECK(lv[0] == lv[1]);
    }
  }
  CHECK_THROWS_AS(dyw::generate(make(GeneratorSpec::Kind::nondoubling, 2)),
                  std::invalid_argument);
}

TEST_CASE("truncation clamps leaves and keeps geometry") {
  const DyadicWeight w({0.25, 1.0, 3.0, 40.0});
  const DyadicWeight t = dyw::truncate(w, 10.0);
  CHECK(t.depth() == w.depth());
  CHECK(t.root_length() == w.root_length());
  CHECK(t.leaves() == std::vector<double>{1.0, 1.0, 3.0, 10.0});
  const DyadicWeight again = dyw::truncate(t, 10.0);
  CHECK(again.leaves() == t.leaves());
  CHECK_THROWS_AS(dyw::truncate(w, 0.5), std::invalid_argument);
}

TEST_CASE("extremal search on the unit curve returns the constant weight") {
  const dyw::OracleResult r = dyw::extremal_search(1.7, std::log(1.7), 3.0,
                                                   8, 500, 7);
  CHECK(r.value == doctest::Approx(1.7 * std::log(1.7)).epsilon(1e-12));
  for (double v : r.leaves) CHECK(v == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("extremal search output is feasible, deterministic, dominated") {
  const double x = 1.2, Q = 2.0;
  const double y = std::log(x) - 0.4 * std::log(Q);  // bracket Q^0.4
  const dyw::OracleResult a = dyw::extremal_search(x, y, Q, 8, 2000, 11);
  const dyw::OracleResult b = dyw::extremal_search(x, y, Q, 8, 2000, 11);
  CHECK(a.value == b.value);
  CHECK(a.leaves == b.leaves);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.evaluations <= 2000);

  // Returned weight satisfies both moment constraints...
  const DyadicWeight w(a.leaves);
  const dyw::NodeRef root = DyadicWeight::root();
  CHECK(w.average(root) == doctest::Approx(x).epsilon(1e-8));
  CHECK(dyw::leaf_average(w, root, [](double v) { return std::log(v); }) ==
        doctest::Approx(y).epsilon(1e-8));
  // ... and the bracket constraint on every node of its own tree.
  CHECK(max_bracket(w) <= Q * (1.0 + 1e-11));
  // The reported value is the weight's own entropy.
  CHECK(dyw::leaf_average(w, root, [](double v) { return v * std::log(v); }) ==
        doctest::Approx(a.value).epsilon(1e-10));

  // Never worse than the two-piece closed form at the same moments.
  const double disc = std::sqrt(x * x - std::exp(2.0 * y));
  const double hi = x + disc, lo = x - disc;
  const double two_piece = 0.5 * (hi * std::log(hi) + lo * std::log(lo));
  CHECK(a.value >= two_piece - 1e-12);

  // Dominated by the enlarged-domain envelope.
  const double q0 = dyw::solve_q0(Q).q0;
  for (double frac : {0.15, 0.5, 0.85}) {
    const double yy = std::log(x) - frac * std::log(Q);
    const dyw::OracleResult r = dyw::extremal_search(x, yy, Q, 4, 800, 5);
    CHECK(r.value <= dyw::bellman_value({x, yy}, q0) + 1e-8);
  }
}

TEST_CASE("extremal search argument validation") {
  CHECK_THROWS_AS(dyw::extremal_search(1.0, 0.0, 2.0, 3, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(dyw::extremal_search(1.0, 0.0, 2.0, 8, 0, 1),
                  std::invalid_argument);
  // Moments outside the bracket window are rejected.
  CHECK_THROWS_AS(dyw::extremal_search(1.0, -std::log(3.0), 2.0, 8, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(dyw::extremal_search(1.0, 0.5, 2.0, 8, 100, 1),
                  std::invalid_argument);
}

}  // TEST_SUITE
