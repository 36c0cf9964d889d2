#include "dyw/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dyw {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(std::string("dyw: ") + msg);
}

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller from explicit uniforms; avoids the implementation-defined
// std::normal_distribution so seeds reproduce across standard libraries.
double norm01(std::mt19937_64& rng) {
  double u1 = 0.0;
  do {
    u1 = u01(rng);
  } while (u1 <= 0.0);
  const double u2 = u01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

bool power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

DyadicWeight generate(const GeneratorSpec& spec) {
  require(spec.depth >= 0 && spec.depth <= 24, "generator depth out of range");
  const std::int64_t n = std::int64_t{1} << spec.depth;
  switch (spec.kind) {
    case GeneratorSpec::Kind::constant: {
      require(spec.a > 0.0 && std::isfinite(spec.a), "constant needs a > 0");
      return DyadicWeight(std::vector<double>(static_cast<std::size_t>(n), spec.a));
    }
    case GeneratorSpec::Kind::two_value: {
      require(spec.a > 0.0 && spec.b > 0.0 && std::isfinite(spec.a) &&
                  std::isfinite(spec.b),
              "two_value needs positive a, b");
      return DyadicWeight({spec.a, spec.b});
    }
    case GeneratorSpec::Kind::power_like: {
      const double e = spec.exponent;
      require(std::isfinite(e) && e > -1.0, "power_like needs exponent > -1");
      std::vector<double> leaves(static_cast<std::size_t>(n), 1.0);
      if (e != 0.0) {
        const double h = 1.0 / static_cast<double>(n);
        for (std::int64_t i = 0; i < n; ++i) {
          if (i == 0) {
            leaves[0] = std::pow(h, e) / (e + 1.0);
          } else {
            const double l = static_cast<double>(i) * h;
            leaves[static_cast<std::size_t>(i)] =
                std::pow(l, e + 1.0) *
                std::expm1((e + 1.0) * std::log1p(1.0 / static_cast<double>(i))) /
                ((e + 1.0) * h);
          }
        }
      }
      return DyadicWeight(std::move(leaves));
    }
    case GeneratorSpec::Kind::cascade: {
      require(spec.eps_max > 0.0 && spec.eps_max < 1.0,
              "cascade needs eps_max in (0, 1)");
      std::mt19937_64 rng(spec.seed);
      std::vector<double> val(static_cast<std::size_t>(2 * n), 0.0);
      val[1] = 1.0;
      for (std::int64_t id = 1; id < n; ++id) {
        const double eps = spec.eps_max * u01(rng);
        const double sgn = u01(rng) < 0.5 ? 1.0 : -1.0;
        val[static_cast<std::size_t>(2 * id)] =
            val[static_cast<std::size_t>(id)] * (1.0 + sgn * eps);
        val[static_cast<std::size_t>(2 * id + 1)] =
            val[static_cast<std::size_t>(id)] * (1.0 - sgn * eps);
      }
      return DyadicWeight(std::vector<double>(val.begin() + n, val.end()));
    }
    case GeneratorSpec::Kind::nondoubling: {
      require(spec.bound > 1.0 && std::isfinite(spec.bound),
              "nondoubling needs bound > 1");
      require(spec.depth >= 3, "nondoubling needs depth >= 3");
      // Geometric step-down towards the left endpoint.  With cell ratio
      // 1/(bound+1) the parent/child average ratio along the left spine
      // lies in [bound, bound+1) for depth >= 3, while the square-mean
      // ratio on every node stays below 2.
      const double two_delta = 1.0 / (spec.bound + 1.0);
      std::vector<double> leaves(static_cast<std::size_t>(n), 0.0);
      leaves[0] = std::pow(two_delta, spec.depth - 1);
      for (int j = 0; j < spec.depth; ++j) {
        const double v = std::pow(two_delta, j);
        const std::int64_t a = n >> (j + 1);
        const std::int64_t b = n >> j;
        for (std::int64_t i = a; i < b; ++i)
          leaves[static_cast<std::size_t>(i)] = v;
      }
      return DyadicWeight(std::move(leaves));
    }
  }
  throw std::logic_error("dyw: unreachable");
}

DyadicWeight truncate(const DyadicWeight& w, double n) {
  require(std::isfinite(n) && n >= 1.0, "truncate needs n >= 1");
  std::vector<double> leaves = w.leaves();
  for (double& v : leaves) v = std::min(std::max(v, 1.0), n);
  return DyadicWeight(std::move(leaves), w.root_length());
}

namespace {

// Moment projection onto { <w> = x, <log w> = y } along w = a * shape^tau.
// H(tau) = log <shape^tau> - tau <log shape> is 0 at 0 and nondecreasing,
// so the positive root of H = xi exists whenever the shape is nonconstant.
bool project_moments(const std::vector<double>& shape, double x, double y,
                     double xi, std::vector<double>& out) {
  const std::size_t m = shape.size();
  std::vector<double> ls(m);
  double mean_ls = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ls[i] = std::log(shape[i]);
    mean_ls += ls[i];
  }
  mean_ls /= static_cast<double>(m);
  double spread = 0.0;
  for (double v : ls) spread = std::max(spread, std::abs(v - mean_ls));
  if (spread < 1e-12) return false;
  auto big_h = [&](double tau) {
    double acc = 0.0;
    for (double v : ls) acc += std::exp(tau * (v - mean_ls));
    return std::log(acc / static_cast<double>(m));
  };
  double hi = 1.0;
  int guard = 0;
  while (big_h(hi) < xi) {
    hi *= 2.0;
    if (++guard > 80) return false;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (big_h(mid) < xi)
      lo = mid;
    else
      hi = mid;
  }
  const double tau = 0.5 * (lo + hi);
  const double log_a = y - tau * mean_ls;
  out.resize(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = std::exp(log_a + tau * ls[i]);
  return true;
}

// Bracket <w>_I exp(-<log w>_I) <= Q(1 + 1e-12) on every dyadic node of the
// piece tree.
bool dyadic_feasible(const std::vector<double>& w, double Q) {
  const std::size_t m = w.size();
  std::vector<double> avg(2 * m), lavg(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    avg[m + i] = w[i];
    lavg[m + i] = std::log(w[i]);
  }
  for (std::size_t id = m - 1; id >= 1; --id) {
    avg[id] = 0.5 * (avg[2 * id] + avg[2 * id + 1]);
    lavg[id] = 0.5 * (lavg[2 * id] + lavg[2 * id + 1]);
  }
  for (std::size_t id = 1; id < 2 * m; ++id)
    if (avg[id] * std::exp(-lavg[id]) > Q * (1.0 + 1e-12)) return false;
  return true;
}

double entropy_mean(const std::vector<double>& w) {
  double acc = 0.0;
  for (double v : w) acc += v * std::log(v);
  return acc / static_cast<double>(w.size());
}

}  // namespace

OracleResult extremal_search(double x, double y, double Q, int pieces,
                             std::uint64_t budget, std::uint64_t seed) {
  require(std::isfinite(x) && x > 0.0 && std::isfinite(y), "bad moment point");
  require(std::isfinite(Q) && Q >= 1.0, "extremal_search needs Q >= 1");
  require(pieces >= 2 && pieces <= 1024 && power_of_two(pieces),
          "pieces must be a power of two in [2, 1024]");
  require(budget >= 1, "budget must be positive");
  const double br = x * std::exp(-y);
  require(br >= 1.0 - 1e-12 && br <= Q * (1.0 + 1e-12),
          "moment point bracket outside [1, Q]");
  const std::size_t m = static_cast<std::size_t>(pieces);
  const double xi = std::max(0.0, std::log(x) - y);

  OracleResult out;
  if (xi <= 1e-14) {
    out.value = x * std::log(x);
    out.leaves.assign(m, x);
    out.evaluations = 1;
    return out;
  }

  // Two-piece closed form: values x +- sqrt(x^2 - e^{2y}) on the halves.
  // Its sub-brackets are 1, so it is feasible for every admissible Q.
  const double disc = std::sqrt(std::max(0.0, x * x - std::exp(2.0 * y)));
  std::vector<double> best_w(m);
  for (std::size_t i = 0; i < m; ++i) best_w[i] = i < m / 2 ? x + disc : x - disc;
  double best = entropy_mean(best_w);
  out.evaluations = 1;

  std::vector<double> shape(m), cand;
  const double sigmas[6] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  for (int r = 0; r < 12 && out.evaluations < budget; ++r) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (r + 1)));
    const double sigma = sigmas[r % 6];
    for (std::size_t i = 0; i < m; ++i) shape[i] = std::exp(sigma * norm01(rng));
    for (int variant = 0; variant < 2 && out.evaluations < budget; ++variant) {
      if (variant == 1) std::sort(shape.begin(), shape.end(), std::greater<>());
      if (!project_moments(shape, x, y, xi, cand)) continue;
      ++out.evaluations;
      if (dyadic_feasible(cand, Q)) {
        const double v = entropy_mean(cand);
        if (v > best + 1e-15) {
          best = v;
          best_w = cand;
        }
      }
    }
  }

  const double factors[5] = {2.0, 1.5, 1.2, 1.05, 1.01};
  bool improved = true;
  while (improved && out.evaluations < budget) {
    improved = false;
    for (double f : factors) {
      for (std::size_t i = 0; i < m && out.evaluations < budget; ++i) {
        for (double dir : {f, 1.0 / f}) {
          if (out.evaluations >= budget) break;
          shape = best_w;
          shape[i] *= dir;
          if (!project_moments(shape, x, y, xi, cand)) continue;
          ++out.evaluations;
          if (!dyadic_feasible(cand, Q)) continue;
          const double v = entropy_mean(cand);
          if (v > best + 1e-15) {
            best = v;
            best_w = cand;
            improved = true;
          }
        }
      }
    }
  }

  out.value = best;
  out.leaves = std::move(best_w);
  return out;
}

}  // namespace dyw
